#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdwm/image.hpp"
#include "pdwm/ref.hpp"
#include "pdwm/transforms.hpp"

// Evaluation harness: triple datasets, ROC AUC, momentum-PGD collision
// attack under l-inf / l-1 budgets, and the CSV sweep report.

namespace pdwm {

struct EvalTriple {
    Image base;      // I_a
    Image positive;  // transform(I_a)
    Image negative;  // I_b, a different corpus image
    std::string transform;  // label of the spec that made the positive
};

// Lightweight plan entry so large runs can materialize triples one at a
// time instead of holding the whole dataset.
struct TriplePlan {
    int base_index = 0;
    int negative_index = 0;
    TransformSpec spec;
};

std::vector<TriplePlan> plan_triples(int corpus_size, const std::vector<TransformSpec>& suite,
                                     std::uint64_t seed);
EvalTriple make_triple(const std::vector<Image>& corpus, const TriplePlan& plan);
std::vector<EvalTriple> build_triples(const std::vector<Image>& corpus,
                                      const std::vector<TransformSpec>& suite, std::uint64_t seed);

enum class AttackNorm { linf, l1 };
std::string norm_name(AttackNorm n);

struct AttackParams {
    AttackNorm norm = AttackNorm::linf;
    int epsilon_num = 8;      // budget numerator; epsilon = epsilon_num/255
    int steps = 20;
    double momentum_mu = 0.9;

    double epsilon() const { return epsilon_num / 255.0; }
};

struct RocResult {
    double auc = 0.0;
    std::vector<std::pair<double, int>> scores;  // (score, label): 1 positive, 0 negative
};

// Mann-Whitney rank AUC, ties counted half.
double auc_from_scores(const std::vector<std::pair<double, int>>& scores);

double triple_positive_score(const EvalTriple& t);
double triple_negative_score(const EvalTriple& t);

RocResult clean_roc(const std::vector<EvalTriple>& triples);

// Momentum PGD (20-step MI-FGSM style): positive pushed away from the
// base's surrogate, negative pulled toward it; exact ball + range
// projection every step and after final integer quantization.
EvalTriple pgd_attack(const EvalTriple& triple, const AttackParams& params);

// Seeded random perturbation of the same budget — the control baseline.
EvalTriple noise_attack(const EvalTriple& triple, const AttackParams& params, std::uint64_t seed);

struct AttackedRoc {
    RocResult roc;
    double hash_far = 0.0;  // attacked negatives accepted by ref_compare
    double hash_frr = 0.0;  // attacked positives rejected by ref_compare
};

AttackedRoc attacked_roc(const std::vector<EvalTriple>& triples, const AttackParams& params);

// Exact projection of delta onto the l1 ball of the given radius
// (Duchi et al. thresholding); exposed for the projection tests.
void l1_project(std::vector<double>& delta, double radius);

struct SweepRow {
    std::string norm;
    int epsilon_num = 0;
    double clean_auc = 0.0;
    double attacked_auc = 0.0;
    double hash_far = 0.0;
    double hash_frr = 0.0;
    double seconds = 0.0;
};

struct SweepOptions {
    std::vector<AttackNorm> norms = {AttackNorm::linf, AttackNorm::l1};
    std::vector<int> epsilon_nums = {1, 2, 4, 8, 16, 32};
    int steps = 20;
    double momentum_mu = 0.9;
    std::uint64_t triple_seed = 7;
    bool control_baseline = false;  // random noise instead of PGD
    std::uint64_t control_seed = 99;
    std::ostream* jsonl = nullptr;  // optional per-triple debug stream
};

// Streams triples cell by cell; corpus stays the only large resident object.
std::vector<SweepRow> attack_sweep(const std::vector<Image>& corpus,
                                   const std::vector<TransformSpec>& suite,
                                   const SweepOptions& options);

inline constexpr const char* kSweepCsvHeader =
    "norm,epsilon_num,clean_auc,attacked_auc,hash_far,hash_frr,seconds";

// stable_seconds zeroes the timing column for byte-identical reruns.
void report_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool stable_seconds);
std::vector<SweepRow> parse_report_csv(std::istream& in);

}  // namespace pdwm

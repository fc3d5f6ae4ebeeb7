#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "pdwm/eval.hpp"
#include "pdwm/rng.hpp"

namespace pdwm {

std::vector<TriplePlan> plan_triples(int corpus_size, const std::vector<TransformSpec>& suite,
                                     std::uint64_t seed) {
    if (corpus_size < 2) throw Error("eval: corpus too small for triples");
    Rng rng(seed);
    std::vector<TriplePlan> plan;
    plan.reserve(static_cast<std::size_t>(corpus_size) * suite.size());
    for (int b = 0; b < corpus_size; ++b) {
        for (const auto& spec : suite) {
            // Uniform over the other corpus images.
            int neg = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(corpus_size - 1)));
            if (neg >= b) ++neg;
            plan.push_back({b, neg, spec});
        }
    }
    return plan;
}

EvalTriple make_triple(const std::vector<Image>& corpus, const TriplePlan& plan) {
    return {corpus[plan.base_index], apply(plan.spec, corpus[plan.base_index]),
            corpus[plan.negative_index], plan.spec.label()};
}

std::vector<EvalTriple> build_triples(const std::vector<Image>& corpus,
                                      const std::vector<TransformSpec>& suite, std::uint64_t seed) {
    const auto plan = plan_triples(static_cast<int>(corpus.size()), suite, seed);
    std::vector<EvalTriple> triples;
    triples.reserve(plan.size());
    for (const auto& p : plan) triples.push_back(make_triple(corpus, p));
    return triples;
}

std::string norm_name(AttackNorm n) { return n == AttackNorm::linf ? "linf" : "l1"; }

double auc_from_scores(const std::vector<std::pair<double, int>>& scores) {
    if (scores.empty()) throw Error("eval: no scores for AUC");
    std::size_t npos = 0;
    for (const auto& [s, l] : scores) npos += l ? 1 : 0;
    const std::size_t nneg = scores.size() - npos;
    if (npos == 0 || nneg == 0) throw Error("eval: AUC needs both labels");

    // Mann-Whitney via average ranks; tied scores share the mean rank.
    std::vector<std::pair<double, int>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (sorted[k].second) rank_sum_pos += avg_rank;
        i = j;
    }
    const double npos_d = static_cast<double>(npos);
    return (rank_sum_pos - npos_d * (npos_d + 1.0) / 2.0) / (npos_d * static_cast<double>(nneg));
}

double triple_positive_score(const EvalTriple& t) {
    return surrogate_score(ref_surrogate(t.base), ref_surrogate(t.positive));
}

double triple_negative_score(const EvalTriple& t) {
    return surrogate_score(ref_surrogate(t.base), ref_surrogate(t.negative));
}

RocResult clean_roc(const std::vector<EvalTriple>& triples) {
    if (triples.empty()) throw Error("eval: no triples");
    RocResult r;
    r.scores.reserve(triples.size() * 2);
    for (const auto& t : triples) {
        r.scores.emplace_back(triple_positive_score(t), 1);
        r.scores.emplace_back(triple_negative_score(t), 0);
    }
    r.auc = auc_from_scores(r.scores);
    return r;
}

AttackedRoc attacked_roc(const std::vector<EvalTriple>& triples, const AttackParams& params) {
    if (triples.empty()) throw Error("eval: no triples");
    AttackedRoc out;
    out.roc.scores.reserve(triples.size() * 2);
    std::size_t far = 0, frr = 0;
    for (const auto& t : triples) {
        const EvalTriple a = pgd_attack(t, params);
        out.roc.scores.emplace_back(triple_positive_score(a), 1);
        out.roc.scores.emplace_back(triple_negative_score(a), 0);
        const Embedding base_e = ref_embed(a.base);
        if (ref_compare(base_e, ref_embed(a.negative))) ++far;
        if (!ref_compare(base_e, ref_embed(a.positive))) ++frr;
    }
    out.roc.auc = auc_from_scores(out.roc.scores);
    out.hash_far = static_cast<double>(far) / triples.size();
    out.hash_frr = static_cast<double>(frr) / triples.size();
    return out;
}

void report_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool stable_seconds) {
    out << kSweepCsvHeader << '\n';
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f", r.norm.c_str(),
                      r.epsilon_num, r.clean_auc, r.attacked_auc, r.hash_far, r.hash_frr,
                      stable_seconds ? 0.0 : r.seconds);
        out << buf << '\n';
    }
}

std::vector<SweepRow> parse_report_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line != kSweepCsvHeader) throw Error("csv: unexpected header: " + line);
            seen_header = true;
            continue;
        }
        SweepRow r;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, r.norm, ',');
        auto next = [&ls, &field]() {
            if (!std::getline(ls, field, ',')) throw Error("csv: short row");
            return field;
        };
        r.epsilon_num = std::stoi(next());
        r.clean_auc = std::stod(next());
        r.attacked_auc = std::stod(next());
        r.hash_far = std::stod(next());
        r.hash_frr = std::stod(next());
        r.seconds = std::stod(next());
        rows.push_back(r);
    }
    if (!seen_header) throw Error("csv: missing header");
    return rows;
}

}  // namespace pdwm

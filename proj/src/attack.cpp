#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "pdwm/eval.hpp"
#include "pdwm/kern/kernels.hpp"
#include "pdwm/rng.hpp"

namespace pdwm {
namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Duchi-style threshold over the nonzero entries of delta.
void l1_project_impl(std::vector<double>& delta, double radius,
                     const std::vector<std::uint32_t>& support) {
    double sum = 0.0;
    for (auto i : support) sum += std::fabs(delta[i]);
    if (sum <= radius) return;
    if (radius <= 0.0) {
        for (auto i : support) delta[i] = 0.0;
        return;
    }

    std::vector<double> mags;
    mags.reserve(support.size());
    for (auto i : support) mags.push_back(std::fabs(delta[i]));
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    double cum = 0.0, theta = 0.0;
    for (std::size_t j = 0; j < mags.size(); ++j) {
        cum += mags[j];
        const double cand = (cum - radius) / static_cast<double>(j + 1);
        if (mags[j] - cand > 0.0)
            theta = cand;
        else
            break;
    }
    for (auto i : support) {
        const double shrunk = std::fabs(delta[i]) - theta;
        delta[i] = shrunk > 0.0 ? sgn(delta[i]) * shrunk : 0.0;
    }
}

struct L1State {
    std::vector<std::uint32_t> touched;
    std::vector<std::uint8_t> seen;

    void mark(std::uint32_t i) {
        if (!seen[i]) {
            seen[i] = 1;
            touched.push_back(i);
        }
    }
};

// Select the k largest-|m| coordinates; ties at the threshold resolved by
// ascending index so runs are reproducible.
std::vector<std::uint32_t> top_coords(const std::vector<double>& m, std::size_t k) {
    const std::size_t n = m.size();
    k = std::min(k, n);
    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = std::fabs(m[i]);
    std::vector<double> work = mags;
    std::nth_element(work.begin(), work.begin() + (n - k), work.end());
    const double thr = work[n - k];

    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint32_t i = 0; i < n && out.size() < k; ++i)
        if (mags[i] > thr) out.push_back(i);
    for (std::uint32_t i = 0; i < n && out.size() < k; ++i)
        if (mags[i] == thr) out.push_back(i);
    return out;
}

Image attack_image(const Image& start, const SurrogateVector& target, int direction,
                   const AttackParams& p) {
    const std::size_t n = start.data.size();
    ImageF x = ImageF::from(start);
    std::vector<double> orig = x.data;
    std::vector<double> m(n, 0.0);
    const auto& k = kern::backend();

    if (p.norm == AttackNorm::linf) {
        const double radius = static_cast<double>(p.epsilon_num);
        std::vector<double> lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::max(0.0, orig[i] - radius);
            hi[i] = std::min(255.0, orig[i] + radius);
        }
        const double step = 2.5 * radius / p.steps;
        for (int it = 0; it < p.steps; ++it) {
            const auto g = surrogate_gradient(x, direction, target);
            const double l1 = k.l1norm_f64(g.data(), n);
            k.scale_add_f64(m.data(), g.data(), n, p.momentum_mu, l1 > 0.0 ? 1.0 / l1 : 0.0);
            k.step_project_f64(x.data.data(), m.data(), lo.data(), hi.data(), n, step);
        }
        // Integer radius: rounding cannot leave the ball.
        return x.quantize();
    }

    // l1: ball radius epsilon * 255 * D, concentrated steps on the largest
    // momentum coordinates, exact projection each iteration.
    const double radius = static_cast<double>(p.epsilon_num) * static_cast<double>(n);
    const std::size_t coords = std::max<std::size_t>(1, n / 100);
    const double per_coord = 2.5 * radius / p.steps / static_cast<double>(coords);
    L1State state;
    state.seen.assign(n, 0);

    for (int it = 0; it < p.steps; ++it) {
        const auto g = surrogate_gradient(x, direction, target);
        const double l1 = k.l1norm_f64(g.data(), n);
        k.scale_add_f64(m.data(), g.data(), n, p.momentum_mu, l1 > 0.0 ? 1.0 / l1 : 0.0);

        for (auto i : top_coords(m, coords)) {
            const double s = sgn(m[i]);
            if (s == 0.0) continue;
            x.data[i] += per_coord * s;
            state.mark(i);
        }

        std::vector<double> delta(n, 0.0);
        for (auto i : state.touched) delta[i] = x.data[i] - orig[i];
        l1_project_impl(delta, radius, state.touched);
        for (auto i : state.touched) {
            double v = orig[i] + delta[i];
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            x.data[i] = v;
        }
    }

    // Quantize the perturbation toward zero: preserves both constraints.
    Image out = start;
    for (auto i : state.touched) {
        const double d = std::trunc(x.data[i] - orig[i]);
        out.data[i] = static_cast<std::uint8_t>(orig[i] + d);
    }
    return out;
}

Image noise_image(const Image& start, const AttackParams& p, std::uint64_t seed) {
    const std::size_t n = start.data.size();
    Rng rng(seed);
    Image out = start;

    if (p.norm == AttackNorm::linf) {
        const int radius = p.epsilon_num;
        for (std::size_t i = 0; i < n; ++i) {
            const int d = rng.next_below(2) ? radius : -radius;
            int v = out.data[i] + d;
            if (v < 0) v = 0;
            if (v > 255) v = 255;
            out.data[i] = static_cast<std::uint8_t>(v);
        }
        return out;
    }

    const double radius = static_cast<double>(p.epsilon_num) * static_cast<double>(n);
    const int mag = static_cast<int>(std::min(8.0, radius));
    if (mag == 0) return out;
    std::size_t count = std::min<double>(static_cast<double>(n), radius / mag);
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(idx[i], idx[j]);
        const int d = rng.next_below(2) ? mag : -mag;
        int v = out.data[idx[i]] + d;
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        out.data[idx[i]] = static_cast<std::uint8_t>(v);
    }
    return out;
}

}  // namespace

void l1_project(std::vector<double>& delta, double radius) {
    std::vector<std::uint32_t> support;
    for (std::uint32_t i = 0; i < delta.size(); ++i)
        if (delta[i] != 0.0) support.push_back(i);
    l1_project_impl(delta, radius, support);
}

EvalTriple pgd_attack(const EvalTriple& triple, const AttackParams& params) {
    const SurrogateVector target = ref_surrogate(triple.base);
    EvalTriple out;
    out.base = triple.base;
    out.transform = triple.transform;
    out.positive = attack_image(triple.positive, target, -1, params);
    out.negative = attack_image(triple.negative, target, +1, params);
    return out;
}

EvalTriple noise_attack(const EvalTriple& triple, const AttackParams& params, std::uint64_t seed) {
    EvalTriple out;
    out.base = triple.base;
    out.transform = triple.transform;
    out.positive = noise_image(triple.positive, params, Rng::splitmix_combine(seed, 0));
    out.negative = noise_image(triple.negative, params, Rng::splitmix_combine(seed, 1));
    return out;
}

std::vector<SweepRow> attack_sweep(const std::vector<Image>& corpus,
                                   const std::vector<TransformSpec>& suite,
                                   const SweepOptions& options) {
    const auto plan = plan_triples(static_cast<int>(corpus.size()), suite, options.triple_seed);

    // Clean scores once, shared by every sweep cell.
    std::vector<std::pair<double, int>> clean_scores;
    clean_scores.reserve(plan.size() * 2);
    for (const auto& pl : plan) {
        const EvalTriple t = make_triple(corpus, pl);
        clean_scores.emplace_back(triple_positive_score(t), 1);
        clean_scores.emplace_back(triple_negative_score(t), 0);
    }
    const double clean = auc_from_scores(clean_scores);

    std::vector<SweepRow> rows;
    for (const auto norm : options.norms) {
        for (const int eps : options.epsilon_nums) {
            AttackParams params;
            params.norm = norm;
            params.epsilon_num = eps;
            params.steps = options.steps;
            params.momentum_mu = options.momentum_mu;

            const auto t0 = std::chrono::steady_clock::now();
            std::vector<std::pair<double, int>> scores;
            scores.reserve(plan.size() * 2);
            std::size_t far = 0, frr = 0;
            for (std::size_t i = 0; i < plan.size(); ++i) {
                const EvalTriple t = make_triple(corpus, plan[i]);
                const EvalTriple a =
                    options.control_baseline
                        ? noise_attack(t, params, Rng::splitmix_combine(options.control_seed, i))
                        : pgd_attack(t, params);
                const double ps = triple_positive_score(a), ns = triple_negative_score(a);
                scores.emplace_back(ps, 1);
                scores.emplace_back(ns, 0);
                const Embedding base_e = ref_embed(a.base);
                const bool neg_pass = ref_compare(base_e, ref_embed(a.negative));
                const bool pos_pass = ref_compare(base_e, ref_embed(a.positive));
                if (neg_pass) ++far;
                if (!pos_pass) ++frr;
                if (options.jsonl) {
                    *options.jsonl << "{\"norm\":\"" << norm_name(norm) << "\",\"epsilon_num\":" << eps
                                   << ",\"triple\":" << i << ",\"transform\":\"" << a.transform
                                   << "\",\"pos_score\":" << ps << ",\"neg_score\":" << ns
                                   << ",\"pos_pass\":" << (pos_pass ? "true" : "false")
                                   << ",\"neg_pass\":" << (neg_pass ? "true" : "false") << "}\n";
                }
            }
            const auto t1 = std::chrono::steady_clock::now();

            SweepRow row;
            row.norm = norm_name(norm);
            row.epsilon_num = eps;
            row.clean_auc = clean;
            row.attacked_auc = auc_from_scores(scores);
            row.hash_far = static_cast<double>(far) / plan.size();
            row.hash_frr = static_cast<double>(frr) / plan.size();
            row.seconds = std::chrono::duration<double>(t1 - t0).count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace pdwm

#include <immintrin.h>

#include <cmath>

#include "pdwm/kern/kernels.hpp"

// AVX2 kernel variants. Same rounding as the scalar reference: mul+add
// pairs instead of FMA, reductions blocked exactly like scalar.cpp.

namespace pdwm::kern {
namespace {

inline __m256d luma(__m256d r, __m256d g, __m256d b) {
    const __m256d wr = _mm256_set1_pd(0.299);
    const __m256d wg = _mm256_set1_pd(0.587);
    const __m256d wb = _mm256_set1_pd(0.114);
    return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(wr, r), _mm256_mul_pd(wg, g)),
                         _mm256_mul_pd(wb, b));
}

void gray_u8_avx2(const std::uint8_t* rgb, std::size_t n, double* gray) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const std::uint8_t* p = rgb + i * 3;
        __m256d r = _mm256_set_pd(p[9], p[6], p[3], p[0]);
        __m256d g = _mm256_set_pd(p[10], p[7], p[4], p[1]);
        __m256d b = _mm256_set_pd(p[11], p[8], p[5], p[2]);
        _mm256_storeu_pd(gray + i, luma(r, g, b));
    }
    for (; i < n; ++i) {
        const double r = rgb[i * 3 + 0], g = rgb[i * 3 + 1], b = rgb[i * 3 + 2];
        gray[i] = (0.299 * r + 0.587 * g) + 0.114 * b;
    }
}

void gray_f64_avx2(const double* rgb, std::size_t n, double* gray) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double* p = rgb + i * 3;
        __m256d r = _mm256_set_pd(p[9], p[6], p[3], p[0]);
        __m256d g = _mm256_set_pd(p[10], p[7], p[4], p[1]);
        __m256d b = _mm256_set_pd(p[11], p[8], p[5], p[2]);
        _mm256_storeu_pd(gray + i, luma(r, g, b));
    }
    for (; i < n; ++i) {
        const double r = rgb[i * 3 + 0], g = rgb[i * 3 + 1], b = rgb[i * 3 + 2];
        gray[i] = (0.299 * r + 0.587 * g) + 0.114 * b;
    }
}

void matmul_avx2(const double* a, const double* b, double* out, int n) {
    for (int i = 0; i < n; ++i) {
        double* row = out + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] = 0.0;
        for (int k = 0; k < n; ++k) {
            const double aik = a[static_cast<std::size_t>(i) * n + k];
            const __m256d va = _mm256_set1_pd(aik);
            const double* brow = b + static_cast<std::size_t>(k) * n;
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d acc = _mm256_loadu_pd(row + j);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(va, _mm256_loadu_pd(brow + j)));
                _mm256_storeu_pd(row + j, acc);
            }
            for (; j < n; ++j) row[j] += aik * brow[j];
        }
    }
}

double hsum_tree(__m256d v, const double* a, const double* b, std::size_t i, std::size_t n) {
    // Spill lanes, fold the tail with the scalar rule, collapse the tree.
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    for (; i < n; ++i) lane[i % 4] += (b ? a[i] * b[i] : std::fabs(a[i]));
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    return hsum_tree(acc, a, b, i, n);
}

double l1norm_avx2(const double* x, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i)));
    return hsum_tree(acc, x, nullptr, i, n);
}

void scale_add_avx2(double* m, const double* g, std::size_t n, double mu, double s) {
    const __m256d vmu = _mm256_set1_pd(mu);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vm = _mm256_mul_pd(vmu, _mm256_loadu_pd(m + i));
        __m256d vg = _mm256_mul_pd(vs, _mm256_loadu_pd(g + i));
        _mm256_storeu_pd(m + i, _mm256_add_pd(vm, vg));
    }
    for (; i < n; ++i) m[i] = mu * m[i] + s * g[i];
}

void step_project_avx2(double* x, const double* m, const double* lo, const double* hi,
                       std::size_t n, double step) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d negone = _mm256_set1_pd(-1.0);
    const __m256d vstep = _mm256_set1_pd(step);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vm = _mm256_loadu_pd(m + i);
        __m256d gt = _mm256_cmp_pd(vm, zero, _CMP_GT_OQ);
        __m256d lt = _mm256_cmp_pd(vm, zero, _CMP_LT_OQ);
        __m256d sign = _mm256_or_pd(_mm256_and_pd(gt, one), _mm256_and_pd(lt, negone));
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(vstep, sign));
        v = _mm256_max_pd(v, _mm256_loadu_pd(lo + i));
        v = _mm256_min_pd(v, _mm256_loadu_pd(hi + i));
        _mm256_storeu_pd(x + i, v);
    }
    for (; i < n; ++i) {
        const double sign = m[i] > 0.0 ? 1.0 : (m[i] < 0.0 ? -1.0 : 0.0);
        double v = x[i] + step * sign;
        if (v < lo[i]) v = lo[i];
        if (v > hi[i]) v = hi[i];
        x[i] = v;
    }
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b = {
        "avx2",        gray_u8_avx2,   gray_f64_avx2,     matmul_avx2,
        dot_avx2,      l1norm_avx2,    scale_add_avx2,    step_project_avx2,
    };
    return b;
}

}  // namespace pdwm::kern

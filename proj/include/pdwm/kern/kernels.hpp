#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Hot-loop kernels behind a runtime-selected dispatch table. Every kernel
// has a scalar reference and (where the build supports it) an AVX2 variant.
// The two are bit-exact by construction, which the test suite enforces:
//
//  * element-wise kernels use the same per-element expression and order;
//  * matmul accumulates sequentially over k (AVX2 vectorizes across
//    independent output columns, never across the reduction);
//  * single-output reductions (dot, l1norm) accumulate into four lanes,
//    blocked by 4 with the tail folded into lane (i % 4), and collapse
//    with the fixed tree (l0+l1) + (l2+l3) in both variants.
//
// No FMA anywhere (and -ffp-contract=off globally), so scalar and vector
// arithmetic round identically.

namespace pdwm::kern {

struct Backend {
    const char* name;

    // Interleaved RGB -> BT.601 luma, n pixels. (0.299*r + 0.587*g) + 0.114*b.
    void (*gray_u8)(const std::uint8_t* rgb, std::size_t n, double* gray);
    void (*gray_f64)(const double* rgb, std::size_t n, double* gray);

    // Square matmul out = a * b, row-major n x n.
    void (*matmul_f64)(const double* a, const double* b, double* out, int n);

    double (*dot_f64)(const double* a, const double* b, std::size_t n);
    double (*l1norm_f64)(const double* x, std::size_t n);

    // m[i] = mu * m[i] + s * g[i]
    void (*scale_add_f64)(double* m, const double* g, std::size_t n, double mu, double s);

    // x[i] = clamp(x[i] + step * sign(m[i]), lo[i], hi[i]); sign(0) == 0.
    void (*step_project_f64)(double* x, const double* m, const double* lo, const double* hi,
                             std::size_t n, double step);
};

// Currently selected backend. Defaults to the widest one the CPU supports.
const Backend& backend();

// Force a backend by name ("scalar", "avx2"). Returns false if the name is
// unknown or the CPU/build lacks it.
bool select_backend(std::string_view name);

std::vector<std::string> available_backends();

const Backend& scalar_backend();
#ifdef PDWM_HAVE_AVX2
const Backend& avx2_backend();
#endif

}  // namespace pdwm::kern

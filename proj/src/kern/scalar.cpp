#include <cmath>

#include "pdwm/kern/kernels.hpp"

namespace pdwm::kern {
namespace {

void gray_u8_scalar(const std::uint8_t* rgb, std::size_t n, double* gray) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb[i * 3 + 0], g = rgb[i * 3 + 1], b = rgb[i * 3 + 2];
        gray[i] = (0.299 * r + 0.587 * g) + 0.114 * b;
    }
}

void gray_f64_scalar(const double* rgb, std::size_t n, double* gray) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb[i * 3 + 0], g = rgb[i * 3 + 1], b = rgb[i * 3 + 2];
        gray[i] = (0.299 * r + 0.587 * g) + 0.114 * b;
    }
}

void matmul_scalar(const double* a, const double* b, double* out, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out[i * n + j] = 0.0;
        for (int k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            for (int j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
        }
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double lane[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int j = 0; j < 4; ++j) lane[j] += a[i + j] * b[i + j];
    for (; i < n; ++i) lane[i % 4] += a[i] * b[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double l1norm_scalar(const double* x, std::size_t n) {
    double lane[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int j = 0; j < 4; ++j) lane[j] += std::fabs(x[i + j]);
    for (; i < n; ++i) lane[i % 4] += std::fabs(x[i]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void scale_add_scalar(double* m, const double* g, std::size_t n, double mu, double s) {
    for (std::size_t i = 0; i < n; ++i) m[i] = mu * m[i] + s * g[i];
}

void step_project_scalar(double* x, const double* m, const double* lo, const double* hi,
                         std::size_t n, double step) {
    for (std::size_t i = 0; i < n; ++i) {
        const double sign = m[i] > 0.0 ? 1.0 : (m[i] < 0.0 ? -1.0 : 0.0);
        double v = x[i] + step * sign;
        if (v < lo[i]) v = lo[i];
        if (v > hi[i]) v = hi[i];
        x[i] = v;
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b = {
        "scalar",        gray_u8_scalar,   gray_f64_scalar,     matmul_scalar,
        dot_scalar,      l1norm_scalar,    scale_add_scalar,    step_project_scalar,
    };
    return b;
}

}  // namespace pdwm::kern

#include <algorithm>
#include <bit>
#include <cmath>

#include "pdwm/kern/kernels.hpp"
#include "pdwm/ref.hpp"
#include "pdwm/sig.hpp"  // hex helpers

namespace pdwm {
namespace {

constexpr int kN = 32;  // internal analysis resolution

// Orthonormal DCT-II matrix and its transpose.
struct DctTables {
    std::array<double, kN * kN> c;
    std::array<double, kN * kN> ct;
};

const DctTables& dct_tables() {
    static const DctTables t = [] {
        DctTables t{};
        const double pi = 3.14159265358979323846264338327950288;
        for (int j = 0; j < kN; ++j) {
            const double scale = j == 0 ? std::sqrt(1.0 / kN) : std::sqrt(2.0 / kN);
            for (int k = 0; k < kN; ++k) {
                const double v = scale * std::cos(pi * (2 * k + 1) * j / (2.0 * kN));
                t.c[j * kN + k] = v;
                t.ct[k * kN + j] = v;
            }
        }
        return t;
    }();
    return t;
}

struct BilinearTap {
    int x0, x1, y0, y1;
    double fx, fy;
};

BilinearTap tap(int d, int dim_in, int dim_out, bool vertical, const BilinearTap& base) {
    BilinearTap t = base;
    double s = (d + 0.5) * (static_cast<double>(dim_in) / dim_out) - 0.5;
    if (s < 0.0) s = 0.0;
    const double max = dim_in - 1;
    if (s > max) s = max;
    const int lo = static_cast<int>(s);
    const int hi = std::min(lo + 1, dim_in - 1);
    if (vertical) {
        t.y0 = lo;
        t.y1 = hi;
        t.fy = s - lo;
    } else {
        t.x0 = lo;
        t.x1 = hi;
        t.fx = s - lo;
    }
    return t;
}

// gray (w x h) -> 32x32, half-pixel-center bilinear with edge clamp.
void resize32(const std::vector<double>& gray, int w, int h, double* out) {
    for (int dy = 0; dy < kN; ++dy) {
        BilinearTap ty = tap(dy, h, kN, true, {});
        for (int dx = 0; dx < kN; ++dx) {
            BilinearTap t = tap(dx, w, kN, false, ty);
            const double a = gray[static_cast<std::size_t>(t.y0) * w + t.x0];
            const double b = gray[static_cast<std::size_t>(t.y0) * w + t.x1];
            const double c = gray[static_cast<std::size_t>(t.y1) * w + t.x0];
            const double d = gray[static_cast<std::size_t>(t.y1) * w + t.x1];
            const double top = a + t.fx * (b - a);
            const double bot = c + t.fx * (d - c);
            out[dy * kN + dx] = top + t.fy * (bot - top);
        }
    }
}

// Adjoint of resize32: scatter d(out) back onto the gray plane.
void resize32_adjoint(const double* dout, int w, int h, std::vector<double>& dgray) {
    for (int dy = 0; dy < kN; ++dy) {
        BilinearTap ty = tap(dy, h, kN, true, {});
        for (int dx = 0; dx < kN; ++dx) {
            BilinearTap t = tap(dx, w, kN, false, ty);
            const double g = dout[dy * kN + dx];
            dgray[static_cast<std::size_t>(t.y0) * w + t.x0] += g * (1 - t.fx) * (1 - t.fy);
            dgray[static_cast<std::size_t>(t.y0) * w + t.x1] += g * t.fx * (1 - t.fy);
            dgray[static_cast<std::size_t>(t.y1) * w + t.x0] += g * (1 - t.fx) * t.fy;
            dgray[static_cast<std::size_t>(t.y1) * w + t.x1] += g * t.fx * t.fy;
        }
    }
}

// 63 AC values of the top-left 8x8 spectrum of a gray plane.
SurrogateVector surrogate_from_gray(const std::vector<double>& gray, int w, int h) {
    double g32[kN * kN], tmp[kN * kN], spec[kN * kN];
    resize32(gray, w, h, g32);
    const auto& t = dct_tables();
    const auto& k = kern::backend();
    k.matmul_f64(t.c.data(), g32, tmp, kN);
    k.matmul_f64(tmp, t.ct.data(), spec, kN);

    SurrogateVector v;
    int idx = 0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            if (r == 0 && c == 0) continue;
            v.values[idx++] = spec[r * kN + c];
        }
    v.norm = std::sqrt(kern::backend().dot_f64(v.values.data(), v.values.data(), 63));
    return v;
}

std::vector<double> gray_of(const ImageF& img) {
    std::vector<double> gray(static_cast<std::size_t>(img.width) * img.height);
    kern::backend().gray_f64(img.data.data(), gray.size(), gray.data());
    return gray;
}

}  // namespace

std::string Embedding::to_hex() const { return bytes_to_hex(bytes.data(), bytes.size()); }

Embedding Embedding::from_hex(const std::string& hex) {
    if (hex.size() != 16) throw Error("embedding: expected 16 hex characters");
    auto raw = hex_to_bytes(hex);
    Embedding e;
    std::copy(raw.begin(), raw.end(), e.bytes.begin());
    return e;
}

int hamming(const Embedding& a, const Embedding& b) {
    int d = 0;
    for (int i = 0; i < 8; ++i) d += std::popcount(static_cast<unsigned>(a.bytes[i] ^ b.bytes[i]));
    return d;
}

bool ref_compare(const Embedding& a, const Embedding& b, int tau) {
    if (tau < 0 || tau >= kEmbedBits) throw Error("ref: tau out of range");
    return hamming(a, b) <= tau;
}

Embedding threshold_surrogate(const SurrogateVector& v) {
    std::array<double, 63> sorted = v.values;
    std::nth_element(sorted.begin(), sorted.begin() + 31, sorted.end());
    const double median = sorted[31];
    Embedding e;  // bit 0 (the DC slot) stays 0
    for (int i = 0; i < 63; ++i)
        if (v.values[i] > median) e.set_bit(i + 1);
    return e;
}

SurrogateVector ref_surrogate(const ImageF& img) {
    if (img.width <= 0 || img.height <= 0) throw Error("ref: empty image");
    return surrogate_from_gray(gray_of(img), img.width, img.height);
}

SurrogateVector ref_surrogate(const Image& img) {
    std::vector<double> gray(static_cast<std::size_t>(img.width) * img.height);
    kern::backend().gray_u8(img.data.data(), gray.size(), gray.data());
    return surrogate_from_gray(gray, img.width, img.height);
}

Embedding ref_embed(const Image& img) { return threshold_surrogate(ref_surrogate(img)); }
Embedding ref_embed(const ImageF& img) { return threshold_surrogate(ref_surrogate(img)); }

double surrogate_score(const SurrogateVector& a, const SurrogateVector& b) {
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    return kern::backend().dot_f64(a.values.data(), b.values.data(), 63) / (a.norm * b.norm);
}

std::vector<double> surrogate_gradient(const ImageF& img, int direction,
                                       const SurrogateVector& other) {
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    std::vector<double> grad(n * 3, 0.0);

    const SurrogateVector v = ref_surrogate(img);
    if (v.norm == 0.0 || other.norm == 0.0) return grad;

    // d score / d v = (o_hat - s * v_hat) / |v|
    const double s = surrogate_score(v, other);
    double dspec[kN * kN] = {};
    int idx = 0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            if (r == 0 && c == 0) continue;
            const double o_hat = other.values[idx] / other.norm;
            const double v_hat = v.values[idx] / v.norm;
            dspec[r * kN + c] = direction * (o_hat - s * v_hat) / v.norm;
            ++idx;
        }

    // Adjoint of spec = C * g32 * C^T  is  dg32 = C^T * dspec * C.
    const auto& t = dct_tables();
    const auto& k = kern::backend();
    double tmp[kN * kN], dg32[kN * kN];
    k.matmul_f64(t.ct.data(), dspec, tmp, kN);
    k.matmul_f64(tmp, t.c.data(), dg32, kN);

    std::vector<double> dgray(n, 0.0);
    resize32_adjoint(dg32, img.width, img.height, dgray);

    for (std::size_t p = 0; p < n; ++p) {
        grad[p * 3 + 0] = 0.299 * dgray[p];
        grad[p * 3 + 1] = 0.587 * dgray[p];
        grad[p * 3 + 2] = 0.114 * dgray[p];
    }
    return grad;
}

}  // namespace pdwm

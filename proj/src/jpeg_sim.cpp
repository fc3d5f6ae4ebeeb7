#include <array>
#include <cmath>
#include <vector>

#include "pdwm/image.hpp"
#include "pdwm/kern/kernels.hpp"

// JPEG quality-loss simulator: 4:2:0 chroma subsampling, 8x8 block DCT,
// standard quantization tables scaled the usual way. It reproduces JPEG's
// frequency-domain damage deterministically without entropy coding or a
// bitstream (nothing downstream reads .jpg files).

namespace pdwm {
namespace {

constexpr int kLumaTable[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

constexpr int kChromaTable[64] = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,
};

std::array<double, 64> scaled_table(const int* base, int quality) {
    const int sf = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    std::array<double, 64> t;
    for (int i = 0; i < 64; ++i) {
        int s = (base[i] * sf + 50) / 100;
        if (s < 1) s = 1;
        if (s > 255) s = 255;
        t[i] = static_cast<double>(s);
    }
    return t;
}

// Orthonormal 8-point DCT-II matrix (equals the JPEG reference FDCT scaling,
// so the quantization tables apply directly).
struct Dct8 {
    std::array<double, 64> c, ct;
};

const Dct8& dct8() {
    static const Dct8 t = [] {
        Dct8 t{};
        const double pi = 3.14159265358979323846264338327950288;
        for (int j = 0; j < 8; ++j) {
            const double scale = j == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int k = 0; k < 8; ++k) {
                const double v = scale * std::cos(pi * (2 * k + 1) * j / 16.0);
                t.c[j * 8 + k] = v;
                t.ct[k * 8 + j] = v;
            }
        }
        return t;
    }();
    return t;
}

double round_half_away(double v) { return v < 0.0 ? std::ceil(v - 0.5) : std::floor(v + 0.5); }

// In-place DCT -> quantize -> dequantize -> inverse DCT over one plane.
void quantize_plane(std::vector<double>& plane, int w, int h, const std::array<double, 64>& q) {
    const auto& t = dct8();
    const auto& k = kern::backend();
    double block[64], tmp[64], spec[64];
    for (int by = 0; by < h; by += 8) {
        for (int bx = 0; bx < w; bx += 8) {
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    block[y * 8 + x] = plane[static_cast<std::size_t>(by + y) * w + bx + x] - 128.0;
            k.matmul_f64(t.c.data(), block, tmp, 8);
            k.matmul_f64(tmp, t.ct.data(), spec, 8);
            for (int i = 0; i < 64; ++i) spec[i] = round_half_away(spec[i] / q[i]) * q[i];
            k.matmul_f64(t.ct.data(), spec, tmp, 8);
            k.matmul_f64(tmp, t.c.data(), block, 8);
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    plane[static_cast<std::size_t>(by + y) * w + bx + x] = block[y * 8 + x] + 128.0;
        }
    }
}

constexpr double kCrScale = 1.402;  // (1 - 0.299) * 2
constexpr double kCbScale = 1.772;  // (1 - 0.114) * 2

}  // namespace

Image jpeg_roundtrip(const Image& img, int quality) {
    // Pad to a multiple of 16 (full 4:2:0 macroblocks) by edge replication.
    const int wp = (img.width + 15) / 16 * 16;
    const int hp = (img.height + 15) / 16 * 16;
    const int wc = wp / 2, hc = hp / 2;

    std::vector<double> Y(static_cast<std::size_t>(wp) * hp);
    std::vector<double> Cb(static_cast<std::size_t>(wc) * hc, 0.0);
    std::vector<double> Cr(static_cast<std::size_t>(wc) * hc, 0.0);

    std::vector<double> cb_full(static_cast<std::size_t>(wp) * hp);
    std::vector<double> cr_full(static_cast<std::size_t>(wp) * hp);
    for (int y = 0; y < hp; ++y) {
        const int sy = std::min(y, img.height - 1);
        for (int x = 0; x < wp; ++x) {
            const int sx = std::min(x, img.width - 1);
            const double r = img.at(sx, sy, 0), g = img.at(sx, sy, 1), b = img.at(sx, sy, 2);
            const double luma = (0.299 * r + 0.587 * g) + 0.114 * b;
            const std::size_t i = static_cast<std::size_t>(y) * wp + x;
            Y[i] = luma;
            cb_full[i] = 128.0 + (b - luma) / kCbScale;
            cr_full[i] = 128.0 + (r - luma) / kCrScale;
        }
    }
    for (int y = 0; y < hc; ++y)
        for (int x = 0; x < wc; ++x) {
            const std::size_t a = static_cast<std::size_t>(2 * y) * wp + 2 * x;
            const std::size_t b = a + 1, c = a + wp, d = a + wp + 1;
            Cb[static_cast<std::size_t>(y) * wc + x] = (cb_full[a] + cb_full[b] + cb_full[c] + cb_full[d]) / 4.0;
            Cr[static_cast<std::size_t>(y) * wc + x] = (cr_full[a] + cr_full[b] + cr_full[c] + cr_full[d]) / 4.0;
        }

    quantize_plane(Y, wp, hp, scaled_table(kLumaTable, quality));
    const auto chroma_q = scaled_table(kChromaTable, quality);
    quantize_plane(Cb, wc, hc, chroma_q);
    quantize_plane(Cr, wc, hc, chroma_q);

    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double luma = Y[static_cast<std::size_t>(y) * wp + x];
            // Nearest-neighbor chroma upsampling.
            const std::size_t ci = static_cast<std::size_t>(y / 2) * wc + x / 2;
            const double r = luma + kCrScale * (Cr[ci] - 128.0);
            const double b = luma + kCbScale * (Cb[ci] - 128.0);
            const double g = (luma - 0.299 * r - 0.114 * b) / 0.587;
            const double px[3] = {r, g, b};
            for (int c = 0; c < 3; ++c) {
                double v = round_half_away(px[c]);
                if (v < 0.0) v = 0.0;
                if (v > 255.0) v = 255.0;
                out.at(x, y, c) = static_cast<std::uint8_t>(v);
            }
        }
    }
    return out;
}

}  // namespace pdwm

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pdwm/image.hpp"

// Robust embedding function: 64-bit DCT perceptual hash (Embed/Compare)
// plus the real-valued surrogate the attack harness optimizes.
//
// Pipeline: BT.601 grayscale -> bilinear resize to 32x32 -> orthonormal
// 2D DCT-II -> top-left 8x8 block -> drop DC -> 63 AC values; the hash
// thresholds them at their median (strict >, ties to 0) with the DC slot
// pinned to bit 0 = 0.

namespace pdwm {

inline constexpr int kEmbedBits = 64;
inline constexpr int kDefaultTau = 10;

struct Embedding {
    std::array<std::uint8_t, 8> bytes{};  // 64 bits, MSB-first per byte

    bool bit(int i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1; }
    void set_bit(int i) { bytes[i >> 3] |= std::uint8_t(0x80u >> (i & 7)); }
    bool operator==(const Embedding&) const = default;

    std::string to_hex() const;                         // 16 lowercase hex chars
    static Embedding from_hex(const std::string& hex);  // throws on malformed input
};

int hamming(const Embedding& a, const Embedding& b);

struct SurrogateVector {
    std::array<double, 63> values{};  // pre-threshold AC coefficients
    double norm = 0.0;                // cached l2 norm
};

Embedding ref_embed(const Image& img);
Embedding ref_embed(const ImageF& img);

// Hamming(a,b) <= tau.
bool ref_compare(const Embedding& a, const Embedding& b, int tau = kDefaultTau);

SurrogateVector ref_surrogate(const Image& img);
SurrogateVector ref_surrogate(const ImageF& img);

// dot(a,b)/(|a||b|); 0 when either norm is 0.
double surrogate_score(const SurrogateVector& a, const SurrogateVector& b);

// Exact analytic gradient of direction * score(surrogate(img), other) with
// respect to every channel value of img. direction: +1 ascent, -1 descent.
std::vector<double> surrogate_gradient(const ImageF& img, int direction,
                                       const SurrogateVector& other);

// Thresholding a surrogate reproduces the embedding (exposed so tests can
// assert the quantization-consistency invariant directly).
Embedding threshold_surrogate(const SurrogateVector& v);

}  // namespace pdwm

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdwm/image.hpp"

// Deterministic, parameterized image transformations used for robustness
// measurement and positive-pair generation. Every transform preserves the
// input dimensions (resize/crop go down and come back).

namespace pdwm {

enum class TransformKind { identity, jpeg, gaussian_noise, resize, center_crop, brightness };

struct TransformSpec {
    TransformKind kind = TransformKind::identity;
    int quality = 90;          // jpeg, [1,100]
    double sigma = 1.0;        // gaussian_noise, > 0
    std::uint64_t seed = 1;    // gaussian_noise
    double scale = 1.0;        // resize, (0,4]
    double keep = 1.0;         // center_crop, (0,1]
    double delta = 0.0;        // brightness, [-64,64]

    static TransformSpec identity();
    static TransformSpec jpeg(int quality);
    static TransformSpec gaussian_noise(double sigma, std::uint64_t seed);
    static TransformSpec resize(double scale);
    static TransformSpec center_crop(double keep);
    static TransformSpec brightness(double delta);

    // Short filesystem-safe name ("jpeg_q90", "noise_s2", ...).
    std::string label() const;
};

Image apply(const TransformSpec& spec, const Image& img);

// The fixed ten-transform evaluation suite: identity, jpeg q 95/90/85,
// noise sigma 1/2, resize 0.75/1.25, crop 0.9, brightness +25.5.
std::vector<TransformSpec> standard_suite();

// Declared robustness sets. REF tolerates {jpeg q>=85, noise sigma<=2,
// resize +-25%, brightness +-25.5}; PGWS the same minus resize. Identity is
// trivially in both. Crop is in neither.
bool in_t_ref(const TransformSpec& spec);
bool in_t_pgws(const TransformSpec& spec);

}  // namespace pdwm

#include <cmath>

#include "pdwm/image.hpp"
#include "pdwm/rng.hpp"

namespace pdwm {

double Rng::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller on our own uniform draws so the stream is identical on
    // every platform regardless of libstdc++ distribution internals.
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

namespace {

// Channel palette: a band around mid-gray. Content stays clear of 0/255 so
// the standard brightness (+-25.5) and noise (sigma<=2) transforms act
// linearly even on watermarked corpus images (whose values sit within ~8 of
// the originals) instead of saturating. The amplitude also fixes the
// absolute spectral energy of the 32x32 downscale, i.e. how much a
// fixed-budget l-inf adversary can rotate the perceptual-hash surrogate;
// this band keeps the corpus inside the regime the attack harness studies.
constexpr double kMid = 127.5;
constexpr double kAmp = 28.0;
constexpr double kLo = 36.0;
constexpr double kHi = 219.0;

double palette_draw(Rng& rng) { return kMid + kAmp * (2.0 * rng.next_unit() - 1.0); }

std::uint8_t clamp_palette(double v) {
    if (v < kLo) v = kLo;
    if (v > kHi) v = kHi;
    return static_cast<std::uint8_t>(std::lround(v));
}

}  // namespace

Image generate_corpus_image(std::uint64_t seed, int index, int width, int height) {
    if (width <= 0 || height <= 0) throw Error("corpus: dimensions must be positive");
    // One independent stream per image so corpora of different counts agree
    // on their common prefix.
    Rng rng(Rng::splitmix_combine(seed, static_cast<std::uint64_t>(index)));

    // Bilinear gradient between four random corner colors.
    double corner[4][3];
    for (auto& c : corner)
        for (double& ch : c) ch = palette_draw(rng);

    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        double fy = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
        for (int x = 0; x < width; ++x) {
            double fx = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
            for (int c = 0; c < 3; ++c) {
                double top = corner[0][c] * (1 - fx) + corner[1][c] * fx;
                double bot = corner[2][c] * (1 - fx) + corner[3][c] * fx;
                img.at(x, y, c) = clamp_palette(top * (1 - fy) + bot * fy);
            }
        }
    }

    // Seeded rectangles and ellipses on top.
    int shapes = 6 + static_cast<int>(rng.next_below(7));  // 6..12
    for (int s = 0; s < shapes; ++s) {
        bool ellipse = rng.next_below(2) == 1;
        double cx = rng.next_unit() * width;
        double cy = rng.next_unit() * height;
        double rx = (0.05 + 0.20 * rng.next_unit()) * width;
        double ry = (0.05 + 0.20 * rng.next_unit()) * height;
        double col[3];
        for (double& ch : col) ch = palette_draw(rng);
        double alpha = 0.55 + 0.45 * rng.next_unit();

        int x0 = std::max(0, static_cast<int>(std::floor(cx - rx)));
        int x1 = std::min(width - 1, static_cast<int>(std::ceil(cx + rx)));
        int y0 = std::max(0, static_cast<int>(std::floor(cy - ry)));
        int y1 = std::min(height - 1, static_cast<int>(std::ceil(cy + ry)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (ellipse) {
                    double dx = (x - cx) / rx, dy = (y - cy) / ry;
                    if (dx * dx + dy * dy > 1.0) continue;
                }
                for (int c = 0; c < 3; ++c) {
                    double mixed = (1 - alpha) * img.at(x, y, c) + alpha * col[c];
                    img.at(x, y, c) = clamp_palette(mixed);
                }
            }
        }
    }
    return img;
}

std::vector<Image> generate_corpus(const CorpusSpec& spec) {
    if (spec.count < 0) throw Error("corpus: negative count");
    std::vector<Image> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i)
        out.push_back(generate_corpus_image(spec.seed, i, spec.width, spec.height));
    return out;
}

}  // namespace pdwm

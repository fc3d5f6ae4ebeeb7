#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdwm {

// Errors raised across the toolkit. Detection predicates never throw;
// loaders, encoders and CLI plumbing do.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// 8-bit RGB image, row-major, three channels. Values are immutable by
// convention once an image leaves its producer; all operations return
// fresh images.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size = width * height * 3, RGB order

    Image() = default;
    Image(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {
        if (w <= 0 || h <= 0) throw Error("image dimensions must be positive");
    }

    std::size_t values() const { return data.size(); }

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    bool same_dims(const Image& o) const { return width == o.width && height == o.height; }
    bool operator==(const Image& o) const = default;
};

// Real-valued image plane used by the attack loop and gradient code,
// same layout as Image::data.
struct ImageF {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ImageF() = default;
    ImageF(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.0) {}

    static ImageF from(const Image& img);
    Image quantize() const;  // round half away from zero, clamp to [0,255]
};

// Deterministic synthetic corpus description. Identical specs yield
// bit-identical images on every run.
struct CorpusSpec {
    std::uint64_t seed = 1;
    int count = 100;
    int width = 256;
    int height = 256;
};

// PNG I/O, 8-bit RGB or RGBA (alpha dropped on load). 16-bit, palette
// and interlaced files are rejected with an unsupported-format error.
Image load_png(const std::string& path);
void save_png(const Image& img, const std::string& path);

// 10*log10(255^2 / MSE) over all channel values; +infinity for identical
// images. Throws on dimension mismatch.
double psnr(const Image& a, const Image& b);

// Procedural images: bilinear corner-color gradients plus seeded random
// rectangles and ellipses, drawn from a band around mid-gray. The band
// keeps every value far from 0/255 (brightness/noise transforms never
// clamp, even after a watermark pass) and bounds the spectral energy the
// attack harness works against.
std::vector<Image> generate_corpus(const CorpusSpec& spec);
Image generate_corpus_image(std::uint64_t seed, int index, int width, int height);

}  // namespace pdwm

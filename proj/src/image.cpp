#include "pdwm/image.hpp"

#include <cmath>
#include <limits>

namespace pdwm {

ImageF ImageF::from(const Image& img) {
    ImageF out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) out.data[i] = static_cast<double>(img.data[i]);
    return out;
}

Image ImageF::quantize() const {
    Image out(width, height);
    for (std::size_t i = 0; i < data.size(); ++i) {
        double v = std::round(data[i]);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.data[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

double psnr(const Image& a, const Image& b) {
    if (!a.same_dims(b)) throw Error("psnr: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        sum += d * d;
    }
    if (sum == 0.0) return std::numeric_limits<double>::infinity();
    double mse = sum / static_cast<double>(a.data.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace pdwm

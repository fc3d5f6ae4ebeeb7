#include <cmath>
#include <cstdio>

#include "pdwm/rng.hpp"
#include "pdwm/transforms.hpp"

namespace pdwm {

Image jpeg_roundtrip(const Image& img, int quality);  // jpeg_sim.cpp

namespace {

std::uint8_t round_clamp(double v) {
    double r = std::round(v);
    if (r < 0.0) r = 0.0;
    if (r > 255.0) r = 255.0;
    return static_cast<std::uint8_t>(r);
}

// Half-pixel-center bilinear resample with edge clamp, quantized to u8.
Image bilinear(const Image& src, int out_w, int out_h) {
    Image out(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        if (fy < 0.0) fy = 0.0;
        if (fy > src.height - 1) fy = src.height - 1;
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            if (fx < 0.0) fx = 0.0;
            if (fx > src.width - 1) fx = src.width - 1;
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, src.width - 1);
            const double wx = fx - x0;
            for (int c = 0; c < 3; ++c) {
                const double a = src.at(x0, y0, c), b = src.at(x1, y0, c);
                const double d = src.at(x0, y1, c), e = src.at(x1, y1, c);
                const double top = a + wx * (b - a);
                const double bot = d + wx * (e - d);
                out.at(x, y, c) = round_clamp(top + wy * (bot - top));
            }
        }
    }
    return out;
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

TransformSpec TransformSpec::identity() { return {}; }

TransformSpec TransformSpec::jpeg(int quality) {
    TransformSpec s;
    s.kind = TransformKind::jpeg;
    s.quality = quality;
    return s;
}

TransformSpec TransformSpec::gaussian_noise(double sigma, std::uint64_t seed) {
    TransformSpec s;
    s.kind = TransformKind::gaussian_noise;
    s.sigma = sigma;
    s.seed = seed;
    return s;
}

TransformSpec TransformSpec::resize(double scale) {
    TransformSpec s;
    s.kind = TransformKind::resize;
    s.scale = scale;
    return s;
}

TransformSpec TransformSpec::center_crop(double keep) {
    TransformSpec s;
    s.kind = TransformKind::center_crop;
    s.keep = keep;
    return s;
}

TransformSpec TransformSpec::brightness(double delta) {
    TransformSpec s;
    s.kind = TransformKind::brightness;
    s.delta = delta;
    return s;
}

std::string TransformSpec::label() const {
    switch (kind) {
        case TransformKind::identity: return "identity";
        case TransformKind::jpeg: return "jpeg_q" + std::to_string(quality);
        case TransformKind::gaussian_noise: return "noise_s" + fmt_g(sigma);
        case TransformKind::resize: return "resize_" + fmt_g(scale);
        case TransformKind::center_crop: return "crop_" + fmt_g(keep);
        case TransformKind::brightness: return "bright_" + fmt_g(delta);
    }
    return "unknown";
}

Image apply(const TransformSpec& spec, const Image& img) {
    switch (spec.kind) {
        case TransformKind::identity:
            return img;

        case TransformKind::jpeg:
            if (spec.quality < 1 || spec.quality > 100) throw Error("transform: jpeg quality out of range");
            return jpeg_roundtrip(img, spec.quality);

        case TransformKind::gaussian_noise: {
            if (!(spec.sigma > 0.0)) throw Error("transform: noise sigma must be positive");
            Rng rng(spec.seed);
            Image out(img.width, img.height);
            for (std::size_t i = 0; i < img.data.size(); ++i)
                out.data[i] = round_clamp(img.data[i] + spec.sigma * rng.next_normal());
            return out;
        }

        case TransformKind::resize: {
            if (!(spec.scale > 0.0) || spec.scale > 4.0) throw Error("transform: resize scale out of range");
            const int w = std::max(1, static_cast<int>(std::lround(img.width * spec.scale)));
            const int h = std::max(1, static_cast<int>(std::lround(img.height * spec.scale)));
            return bilinear(bilinear(img, w, h), img.width, img.height);
        }

        case TransformKind::center_crop: {
            if (!(spec.keep > 0.0) || spec.keep > 1.0) throw Error("transform: crop keep out of range");
            const int w = std::max(1, static_cast<int>(std::lround(img.width * spec.keep)));
            const int h = std::max(1, static_cast<int>(std::lround(img.height * spec.keep)));
            const int x0 = (img.width - w) / 2;
            const int y0 = (img.height - h) / 2;
            Image crop(w, h);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    for (int c = 0; c < 3; ++c) crop.at(x, y, c) = img.at(x0 + x, y0 + y, c);
            return bilinear(crop, img.width, img.height);
        }

        case TransformKind::brightness: {
            if (spec.delta < -64.0 || spec.delta > 64.0) throw Error("transform: brightness delta out of range");
            Image out(img.width, img.height);
            for (std::size_t i = 0; i < img.data.size(); ++i)
                out.data[i] = round_clamp(img.data[i] + spec.delta);
            return out;
        }
    }
    throw Error("transform: unknown kind");
}

std::vector<TransformSpec> standard_suite() {
    return {
        TransformSpec::identity(),
        TransformSpec::jpeg(95),
        TransformSpec::jpeg(90),
        TransformSpec::jpeg(85),
        TransformSpec::gaussian_noise(1.0, 1001),
        TransformSpec::gaussian_noise(2.0, 1002),
        TransformSpec::resize(0.75),
        TransformSpec::resize(1.25),
        TransformSpec::center_crop(0.9),
        TransformSpec::brightness(25.5),
    };
}

bool in_t_ref(const TransformSpec& spec) {
    switch (spec.kind) {
        case TransformKind::identity: return true;
        case TransformKind::jpeg: return spec.quality >= 85;
        case TransformKind::gaussian_noise: return spec.sigma <= 2.0;
        case TransformKind::resize: return spec.scale >= 0.75 && spec.scale <= 1.25;
        case TransformKind::center_crop: return spec.keep >= 1.0;
        case TransformKind::brightness: return std::fabs(spec.delta) <= 25.5;
    }
    return false;
}

bool in_t_pgws(const TransformSpec& spec) {
    if (spec.kind == TransformKind::resize) return spec.scale == 1.0;
    if (spec.kind == TransformKind::center_crop) return spec.keep >= 1.0;
    return in_t_ref(spec);
}

}  // namespace pdwm

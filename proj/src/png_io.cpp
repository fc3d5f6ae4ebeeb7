#include <zlib.h>

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "pdwm/image.hpp"

// Minimal PNG codec sufficient for the toolkit: 8-bit grayscale, RGB and
// RGBA (alpha dropped), no palette, no interlacing, no 16-bit. Writing
// always produces 8-bit RGB with filter type 0 per scanline.

namespace pdwm {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {137, 80, 78, 71, 13, 10, 26, 10};

std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) |
           std::uint32_t(p[3]);
}

void write_be32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v >> 24);
    p[1] = std::uint8_t(v >> 16);
    p[2] = std::uint8_t(v >> 8);
    p[3] = std::uint8_t(v);
}

std::vector<std::uint8_t> zlib_inflate(const std::vector<std::uint8_t>& in, std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    uLongf out_len = static_cast<uLongf>(out.size());
    int rc = uncompress(out.data(), &out_len, in.data(), static_cast<uLong>(in.size()));
    if (rc != Z_OK || out_len != expected) throw Error("png: corrupt compressed data");
    return out;
}

std::vector<std::uint8_t> zlib_deflate(const std::vector<std::uint8_t>& in) {
    uLongf bound = compressBound(static_cast<uLong>(in.size()));
    std::vector<std::uint8_t> out(bound);
    int rc = compress2(out.data(), &bound, in.data(), static_cast<uLong>(in.size()), 6);
    if (rc != Z_OK) throw Error("png: compression failed");
    out.resize(bound);
    return out;
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

void unfilter(std::vector<std::uint8_t>& raw, int height, std::size_t stride, int bpp) {
    std::vector<std::uint8_t> prev(stride, 0);
    for (int y = 0; y < height; ++y) {
        std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1);
        int filter = row[0];
        std::uint8_t* cur = row + 1;
        switch (filter) {
            case 0:
                break;
            case 1:
                for (std::size_t i = bpp; i < stride; ++i) cur[i] = std::uint8_t(cur[i] + cur[i - bpp]);
                break;
            case 2:
                for (std::size_t i = 0; i < stride; ++i) cur[i] = std::uint8_t(cur[i] + prev[i]);
                break;
            case 3:
                for (std::size_t i = 0; i < stride; ++i) {
                    int left = i >= std::size_t(bpp) ? cur[i - bpp] : 0;
                    cur[i] = std::uint8_t(cur[i] + (left + prev[i]) / 2);
                }
                break;
            case 4:
                for (std::size_t i = 0; i < stride; ++i) {
                    int left = i >= std::size_t(bpp) ? cur[i - bpp] : 0;
                    int upleft = i >= std::size_t(bpp) ? prev[i - bpp] : 0;
                    cur[i] = std::uint8_t(cur[i] + paeth(left, prev[i], upleft));
                }
                break;
            default:
                throw Error("png: bad filter type");
        }
        std::memcpy(prev.data(), cur, stride);
    }
}

}  // namespace

Image load_png(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("png: cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature.data(), 8) != 0)
        throw Error("png: bad signature in " + path);

    int width = 0, height = 0, bit_depth = 0, color_type = 0;
    std::vector<std::uint8_t> idat;
    std::size_t pos = 8;
    bool seen_ihdr = false, seen_iend = false;
    while (pos + 8 <= bytes.size()) {
        std::uint32_t len = read_be32(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) throw Error("png: truncated chunk");
        char type[5] = {0};
        std::memcpy(type, &bytes[pos + 4], 4);
        const std::uint8_t* payload = &bytes[pos + 8];
        if (std::strcmp(type, "IHDR") == 0) {
            if (len != 13) throw Error("png: bad IHDR");
            width = static_cast<int>(read_be32(payload));
            height = static_cast<int>(read_be32(payload + 4));
            bit_depth = payload[8];
            color_type = payload[9];
            if (payload[12] != 0) throw Error("png: unsupported format (interlaced)");
            if (bit_depth != 8) throw Error("png: unsupported format (bit depth)");
            if (color_type != 0 && color_type != 2 && color_type != 6)
                throw Error("png: unsupported format (color type)");
            seen_ihdr = true;
        } else if (std::strcmp(type, "IDAT") == 0) {
            idat.insert(idat.end(), payload, payload + len);
        } else if (std::strcmp(type, "IEND") == 0) {
            seen_iend = true;
            break;
        }
        pos += 12 + len;
    }
    if (!seen_ihdr || !seen_iend || width <= 0 || height <= 0) throw Error("png: malformed file");

    int channels = color_type == 0 ? 1 : (color_type == 2 ? 3 : 4);
    std::size_t stride = static_cast<std::size_t>(width) * channels;
    std::vector<std::uint8_t> raw = zlib_inflate(idat, (stride + 1) * height);
    unfilter(raw, height, stride, channels);

    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1) + 1;
        for (int x = 0; x < width; ++x) {
            const std::uint8_t* px = row + static_cast<std::size_t>(x) * channels;
            if (channels == 1) {
                img.at(x, y, 0) = img.at(x, y, 1) = img.at(x, y, 2) = px[0];
            } else {
                img.at(x, y, 0) = px[0];
                img.at(x, y, 1) = px[1];
                img.at(x, y, 2) = px[2];
            }
        }
    }
    return img;
}

void save_png(const Image& img, const std::string& path) {
    std::size_t stride = static_cast<std::size_t>(img.width) * 3;
    std::vector<std::uint8_t> raw((stride + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1);
        row[0] = 0;
        std::memcpy(row + 1, img.data.data() + static_cast<std::size_t>(y) * stride, stride);
    }
    std::vector<std::uint8_t> compressed = zlib_deflate(raw);

    std::vector<std::uint8_t> out;
    out.insert(out.end(), kSignature.begin(), kSignature.end());
    auto chunk = [&out](const char* type, const std::uint8_t* payload, std::size_t len) {
        std::uint8_t hdr[8];
        write_be32(hdr, static_cast<std::uint32_t>(len));
        std::memcpy(hdr + 4, type, 4);
        out.insert(out.end(), hdr, hdr + 8);
        if (len) out.insert(out.end(), payload, payload + len);
        std::uint32_t crc = crc32(0, Z_NULL, 0);
        crc = crc32(crc, reinterpret_cast<const Bytef*>(type), 4);
        if (len) crc = crc32(crc, payload, static_cast<uInt>(len));
        std::uint8_t tail[4];
        write_be32(tail, crc);
        out.insert(out.end(), tail, tail + 4);
    };

    std::uint8_t ihdr[13];
    write_be32(ihdr, static_cast<std::uint32_t>(img.width));
    write_be32(ihdr + 4, static_cast<std::uint32_t>(img.height));
    ihdr[8] = 8;   // bit depth
    ihdr[9] = 2;   // RGB
    ihdr[10] = 0;  // deflate
    ihdr[11] = 0;  // adaptive filtering
    ihdr[12] = 0;  // no interlace
    chunk("IHDR", ihdr, 13);
    chunk("IDAT", compressed.data(), compressed.size());
    chunk("IEND", nullptr, 0);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("png: cannot write " + path);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error("png: short write to " + path);
}

}  // namespace pdwm

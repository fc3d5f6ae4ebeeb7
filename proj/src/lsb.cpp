#include "pdwm/lsb.hpp"

namespace pdwm {

std::vector<std::uint8_t> high_bit_hash(const Image& img) {
    const std::size_t n = img.values();
    std::vector<std::uint8_t> out((n * 7 + 7) / 8, 0);
    std::size_t bitpos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t v = static_cast<std::uint8_t>(img.data[i] >> 1);
        for (int b = 6; b >= 0; --b) {
            if ((v >> b) & 1) out[bitpos >> 3] |= std::uint8_t(0x80u >> (bitpos & 7));
            ++bitpos;
        }
    }
    return out;
}

Image lsb_watermark(const SecretKey& sk, const Image& img) {
    if (img.values() < kLsbPayloadBits) throw Error("lsb: image too small for 520-bit payload");
    const Signature sigma = sig_sign(sk, high_bit_hash(img));

    Image out = img;
    auto payload_bit = [&sigma](std::size_t i) -> std::uint8_t {
        if (i < 8) return (kLsbVersion >> (7 - i)) & 1;
        const std::size_t s = i - 8;
        return (sigma.bytes[s >> 3] >> (7 - (s & 7))) & 1;
    };
    for (std::size_t i = 0; i < out.values(); ++i) {
        const std::uint8_t bit = i < kLsbPayloadBits ? payload_bit(i) : 0;
        out.data[i] = static_cast<std::uint8_t>((out.data[i] & 0xFE) | bit);
    }
    return out;
}

bool lsb_detect(const PublicKey& pk, const Image& img) {
    if (img.values() < kLsbPayloadBits) return false;
    std::uint8_t version = 0;
    for (std::size_t i = 0; i < 8; ++i) version = std::uint8_t((version << 1) | (img.data[i] & 1));
    if (version != kLsbVersion) return false;

    Signature sigma;
    for (std::size_t i = 0; i < 512; ++i)
        if (img.data[8 + i] & 1) sigma.bytes[i >> 3] |= std::uint8_t(0x80u >> (i & 7));

    return sig_verify(pk, high_bit_hash(img), sigma);
}

}  // namespace pdwm

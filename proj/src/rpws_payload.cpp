#include <zlib.h>

#include "pdwm/rpws.hpp"

namespace pdwm {
namespace {

void push_byte_bits(PgwsMessage& bits, std::uint8_t byte) {
    for (int b = 7; b >= 0; --b) bits.push_back((byte >> b) & 1);
}

std::uint8_t read_byte_bits(const PgwsMessage& bits, std::size_t bit_offset) {
    std::uint8_t v = 0;
    for (int b = 0; b < 8; ++b) v = std::uint8_t((v << 1) | (bits[bit_offset + b] ? 1 : 0));
    return v;
}

}  // namespace

PgwsMessage rpws_frame_payload(const Signature& sig, const Embedding& e, int capacity) {
    if (capacity < static_cast<int>(kRpwsFramedBits))
        throw Error("rpws: capacity below framed payload size");

    std::uint8_t framed[kRpwsFramedBytes];
    framed[0] = kRpwsVersion;
    std::copy(sig.bytes.begin(), sig.bytes.end(), framed + 1);
    std::copy(e.bytes.begin(), e.bytes.end(), framed + 65);
    const std::uint32_t crc = static_cast<std::uint32_t>(crc32(crc32(0, Z_NULL, 0), framed, 73));
    framed[73] = std::uint8_t(crc >> 24);
    framed[74] = std::uint8_t(crc >> 16);
    framed[75] = std::uint8_t(crc >> 8);
    framed[76] = std::uint8_t(crc);

    PgwsMessage bits;
    bits.reserve(capacity);
    for (std::uint8_t byte : framed) push_byte_bits(bits, byte);
    bits.resize(capacity, 0);
    return bits;
}

bool rpws_parse_payload(const PgwsMessage& m, Signature& sig, Embedding& e) {
    if (m.size() < kRpwsFramedBits) return false;

    std::uint8_t framed[kRpwsFramedBytes];
    for (std::size_t i = 0; i < kRpwsFramedBytes; ++i) framed[i] = read_byte_bits(m, i * 8);
    if (framed[0] != kRpwsVersion) return false;

    const std::uint32_t want = (std::uint32_t(framed[73]) << 24) | (std::uint32_t(framed[74]) << 16) |
                               (std::uint32_t(framed[75]) << 8) | std::uint32_t(framed[76]);
    const std::uint32_t got = static_cast<std::uint32_t>(crc32(crc32(0, Z_NULL, 0), framed, 73));
    if (want != got) return false;

    std::copy(framed + 1, framed + 65, sig.bytes.begin());
    std::copy(framed + 65, framed + 73, e.bytes.begin());
    return true;
}

std::string DetectionReport::to_json_line() const {
    auto b = [](bool v) { return v ? "true" : "false"; };
    return std::string("{\"overall\":") + b(overall) + ",\"sig_ok\":" + b(sig_ok) +
           ",\"embed_ok\":" + b(embed_ok) + ",\"hamming\":" + std::to_string(hamming) +
           ",\"reason\":\"" + reason + "\"}";
}

}  // namespace pdwm

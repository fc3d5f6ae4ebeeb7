#include <sodium.h>

#include <fstream>

#include "pdwm/sig.hpp"

namespace pdwm {

void sodium_ready() {
    static const int rc = sodium_init();
    if (rc < 0) throw Error("sig: crypto library initialization failed");
}

std::string bytes_to_hex(const std::uint8_t* p, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(digits[p[i] >> 4]);
        out.push_back(digits[p[i] & 0xf]);
    }
    return out;
}

std::vector<std::uint8_t> hex_to_bytes(const std::string& hex) {
    if (hex.size() % 2 != 0) throw Error("hex: odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw Error("hex: invalid character");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nibble(hex[i * 2]) << 4) | nibble(hex[i * 2 + 1]));
    return out;
}

std::string Signature::to_hex() const { return bytes_to_hex(bytes.data(), bytes.size()); }

Signature Signature::from_hex(const std::string& hex) {
    if (hex.size() != 128) throw Error("signature: expected 128 hex characters");
    auto raw = hex_to_bytes(hex);
    Signature s;
    std::copy(raw.begin(), raw.end(), s.bytes.begin());
    return s;
}

namespace {

void write_hex_file(const std::uint8_t* p, std::size_t n, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error("key file: cannot write " + path);
    f << bytes_to_hex(p, n) << '\n';
    if (!f) throw Error("key file: short write to " + path);
}

std::vector<std::uint8_t> read_hex_file(const std::string& path, std::size_t expect) {
    std::ifstream f(path);
    if (!f) throw Error("key file: cannot open " + path);
    std::string line;
    std::getline(f, line);
    if (line.size() != expect * 2) throw Error("key file: malformed " + path);
    return hex_to_bytes(line);
}

}  // namespace

void save_secret_key(const SecretKey& sk, const std::string& path) {
    write_hex_file(sk.seed.data(), sk.seed.size(), path);
}

void save_public_key(const PublicKey& pk, const std::string& path) {
    write_hex_file(pk.bytes.data(), pk.bytes.size(), path);
}

SecretKey load_secret_key(const std::string& path) {
    auto raw = read_hex_file(path, 32);
    SecretKey sk;
    std::copy(raw.begin(), raw.end(), sk.seed.begin());
    return sk;
}

PublicKey load_public_key(const std::string& path) {
    auto raw = read_hex_file(path, 32);
    PublicKey pk;
    std::copy(raw.begin(), raw.end(), pk.bytes.begin());
    return pk;
}

}  // namespace pdwm

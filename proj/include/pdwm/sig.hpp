#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pdwm/image.hpp"

// Signature scheme: deterministic Schnorr-style signatures over a standard
// 255-bit curve (Ed25519 via libsodium). 512-bit signatures, 256-bit keys,
// 128-bit security only.

namespace pdwm {

inline constexpr int kSigBits = 512;
inline constexpr int kKeyBits = 256;

struct SecretKey {
    // Ed25519 seed; the expanded form is derived on demand. Never leaves
    // key files / this process.
    std::array<std::uint8_t, 32> seed{};
};

struct PublicKey {
    std::array<std::uint8_t, 32> bytes{};
    bool operator==(const PublicKey&) const = default;
};

struct Signature {
    std::array<std::uint8_t, 64> bytes{};  // exactly 512 bits
    bool operator==(const Signature&) const = default;

    std::string to_hex() const;                           // 128 lowercase hex chars
    static Signature from_hex(const std::string& hex);    // throws on malformed input
};

// λ must be 128; anything else is an unsupported-λ error.
std::pair<SecretKey, PublicKey> sig_generate(int security_bits);

PublicKey derive_public(const SecretKey& sk);

Signature sig_sign(const SecretKey& sk, const std::uint8_t* msg, std::size_t len);
Signature sig_sign(const SecretKey& sk, const std::vector<std::uint8_t>& msg);

bool sig_verify(const PublicKey& pk, const std::uint8_t* msg, std::size_t len, const Signature& sig);
bool sig_verify(const PublicKey& pk, const std::vector<std::uint8_t>& msg, const Signature& sig);

// Key files: 64 lowercase hex characters + newline.
void save_secret_key(const SecretKey& sk, const std::string& path);
void save_public_key(const PublicKey& pk, const std::string& path);
SecretKey load_secret_key(const std::string& path);
PublicKey load_public_key(const std::string& path);

// Shared hex helpers (lowercase, strict).
std::string bytes_to_hex(const std::uint8_t* p, std::size_t n);
std::vector<std::uint8_t> hex_to_bytes(const std::string& hex);

}  // namespace pdwm

#include <sodium.h>

#include "pdwm/sig.hpp"
#include "sig_internal.hpp"

// Key generation and signing. Kept in its own translation unit (away from
// verification) so detection-only binaries can link without any secret-key
// code — public detectability embodied in the build.

namespace pdwm {

std::pair<SecretKey, PublicKey> sig_generate(int security_bits) {
    if (security_bits != 128) throw Error("sig: unsupported security level (only 128-bit)");
    sodium_ready();
    SecretKey sk;
    randombytes_buf(sk.seed.data(), sk.seed.size());
    return {sk, derive_public(sk)};
}

PublicKey derive_public(const SecretKey& sk) {
    sodium_ready();
    std::uint8_t pk_raw[crypto_sign_PUBLICKEYBYTES];
    std::uint8_t sk_raw[crypto_sign_SECRETKEYBYTES];
    if (crypto_sign_seed_keypair(pk_raw, sk_raw, sk.seed.data()) != 0)
        throw Error("sig: keypair derivation failed");
    sodium_memzero(sk_raw, sizeof sk_raw);
    PublicKey pk;
    std::copy(pk_raw, pk_raw + 32, pk.bytes.begin());
    return pk;
}

Signature sig_sign(const SecretKey& sk, const std::uint8_t* msg, std::size_t len) {
    if (len > (std::size_t(1) << 32)) throw Error("sig: message too long");
    sodium_ready();
    std::uint8_t pk_raw[crypto_sign_PUBLICKEYBYTES];
    std::uint8_t sk_raw[crypto_sign_SECRETKEYBYTES];
    if (crypto_sign_seed_keypair(pk_raw, sk_raw, sk.seed.data()) != 0)
        throw Error("sig: keypair derivation failed");
    Signature sig;
    unsigned long long sig_len = 0;
    int rc = crypto_sign_detached(sig.bytes.data(), &sig_len, msg, len, sk_raw);
    sodium_memzero(sk_raw, sizeof sk_raw);
    if (rc != 0 || sig_len != 64) throw Error("sig: signing failed");
    return sig;
}

Signature sig_sign(const SecretKey& sk, const std::vector<std::uint8_t>& msg) {
    return sig_sign(sk, msg.data(), msg.size());
}

}  // namespace pdwm

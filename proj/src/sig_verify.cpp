#include <sodium.h>

#include "pdwm/sig.hpp"
#include "sig_internal.hpp"

namespace pdwm {

bool sig_verify(const PublicKey& pk, const std::uint8_t* msg, std::size_t len, const Signature& sig) {
    sodium_ready();
    return crypto_sign_verify_detached(sig.bytes.data(), msg, len, pk.bytes.data()) == 0;
}

bool sig_verify(const PublicKey& pk, const std::vector<std::uint8_t>& msg, const Signature& sig) {
    return sig_verify(pk, msg.data(), msg.size(), sig);
}

}  // namespace pdwm

#pragma once

#include <string>

#include "pdwm/image.hpp"
#include "pdwm/pgws.hpp"
#include "pdwm/ref.hpp"
#include "pdwm/sig.hpp"

// Robust publicly-detectable watermarking: sign the perceptual-hash
// embedding, carry signature + embedding in the pgws channel, detect by
// verifying the signature and re-deriving the embedding.
//
// Payload bit layout (MSB-first), zero-padded to the pgws capacity:
//   [8-bit version 0x02][512-bit signature][64-bit embedding]
//   [32-bit CRC-32 (IEEE) over the preceding 584 bits]

namespace pdwm {

inline constexpr std::uint8_t kRpwsVersion = 0x02;
inline constexpr std::size_t kRpwsFramedBytes = 77;  // 1 + 64 + 8 + 4
inline constexpr std::size_t kRpwsFramedBits = kRpwsFramedBytes * 8;

struct DetectionReport {
    bool overall = false;
    bool sig_ok = false;    // b1: signature verifies
    bool embed_ok = false;  // b2: embedding within tau of the image's
    int hamming = -1;       // -1 when no payload was recovered
    std::string reason;     // ok | no-payload | signature | embedding | signature+embedding

    std::string to_json_line() const;
};

struct RpwsParams {
    PgwsParams pgws;
    int tau = kDefaultTau;
};

// Payload plumbing, secret-free (also used by copy-attack tests).
PgwsMessage rpws_frame_payload(const Signature& sig, const Embedding& e, int capacity);
// Returns false if version or CRC check fails; outputs are valid only on true.
bool rpws_parse_payload(const PgwsMessage& m, Signature& sig, Embedding& e);

class Rpws {
  public:
    explicit Rpws(RpwsParams params = {});

    // Delegates to the signature scheme; REF/PGWS setup is scheme
    // parameters, not key material.
    static std::pair<SecretKey, PublicKey> generate(int security_bits);

    Image watermark(const SecretKey& sk, const Image& img) const;
    DetectionReport detect(const PublicKey& pk, const Image& img) const;

    const RpwsParams& params() const { return params_; }
    const Pgws& pgws() const { return pgws_; }

  private:
    RpwsParams params_;
    Pgws pgws_;
};

}  // namespace pdwm

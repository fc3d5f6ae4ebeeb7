#include "pdwm/rpws.hpp"

// Watermarking side of the scheme. Separate translation unit from detect so
// detection-only binaries never link signing code.

namespace pdwm {

std::pair<SecretKey, PublicKey> Rpws::generate(int security_bits) {
    return sig_generate(security_bits);
}

Image Rpws::watermark(const SecretKey& sk, const Image& img) const {
    const Embedding e = ref_embed(img);
    const Signature sigma = sig_sign(sk, e.bytes.data(), e.bytes.size());
    return pgws_.encode(img, rpws_frame_payload(sigma, e, params_.pgws.capacity_c));
}

}  // namespace pdwm

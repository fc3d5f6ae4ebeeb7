#include "pdwm/rpws.hpp"

// Detection side: consumes only (pk, image, public scheme params). The
// scheme constructor lives here too so detect-only binaries link cleanly.

namespace pdwm {

Rpws::Rpws(RpwsParams params)
    : params_(std::move(params)), pgws_(Pgws::generate(128, params_.pgws)) {}

DetectionReport Rpws::detect(const PublicKey& pk, const Image& img) const {
    DetectionReport rep;

    PgwsMessage m;
    try {
        m = pgws_.decode(img);
    } catch (const Error&) {  // undersized input: never watermarkable
        rep.reason = "no-payload";
        return rep;
    }

    Signature sigma;
    Embedding claimed;
    if (!rpws_parse_payload(m, sigma, claimed)) {
        rep.reason = "no-payload";
        return rep;
    }

    rep.sig_ok = sig_verify(pk, claimed.bytes.data(), claimed.bytes.size(), sigma);
    const Embedding actual = ref_embed(img);
    rep.hamming = hamming(actual, claimed);
    rep.embed_ok = rep.hamming <= params_.tau;
    rep.overall = rep.sig_ok && rep.embed_ok;

    if (rep.overall)
        rep.reason = "ok";
    else if (!rep.sig_ok && !rep.embed_ok)
        rep.reason = "signature+embedding";
    else if (!rep.sig_ok)
        rep.reason = "signature";
    else
        rep.reason = "embedding";
    return rep;
}

}  // namespace pdwm

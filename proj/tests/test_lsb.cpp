#include <doctest.h>

#include <cstdlib>

#include "pdwm/image.hpp"
#include "pdwm/lsb.hpp"
#include "pdwm/rng.hpp"
#include "pdwm/transforms.hpp"

using namespace pdwm;

TEST_SUITE("lsb") {

TEST_CASE("high_bit_hash packs 7-bit halves and ignores the LSB plane") {
    Image img(2, 1);
    img.data = {0, 1, 2, 3, 254, 255};
    auto h = high_bit_hash(img);
    // ceil(6 * 7 / 8) = 6 bytes; values/2 = {0,0,1,1,127,127} packed as a
    // continuous stream of 7-bit big-endian fields:
    //   0000000 0000000 0000001 0000001 1111111 1111111 + 6 pad zeros
    REQUIRE(h.size() == 6);
    CHECK(h == std::vector<std::uint8_t>{0x00, 0x00, 0x08, 0x1F, 0xFF, 0xC0});

    // Flipping any LSB never changes the hash.
    Image flipped = img;
    for (auto& v : flipped.data) v ^= 1;
    CHECK(high_bit_hash(flipped) == h);

    // Changing a high bit does.
    Image changed = img;
    changed.data[0] = 2;
    CHECK(high_bit_hash(changed) != h);
}

TEST_CASE("watermark embeds in LSBs only and detects with the right key") {
    auto [sk, pk] = sig_generate(128);
    Image img = generate_corpus_image(21, 0, 32, 32);

    Image wm = lsb_watermark(sk, img);
    REQUIRE(wm.same_dims(img));
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        CHECK((wm.data[i] >> 1) == (img.data[i] >> 1));  // only LSBs move
    }
    CHECK(lsb_detect(pk, wm));
    CHECK_FALSE(lsb_detect(pk, img));  // unwatermarked input

    auto [sk2, pk2] = sig_generate(128);
    CHECK_FALSE(lsb_detect(pk2, wm));  // wrong key
}

TEST_CASE("payload area is exactly version plus signature then zeros") {
    auto [sk, pk] = sig_generate(128);
    Image img = generate_corpus_image(22, 0, 32, 32);
    Image wm = lsb_watermark(sk, img);

    // First 8 LSBs spell the version byte.
    int version = 0;
    for (int i = 0; i < 8; ++i) version = (version << 1) | (wm.data[static_cast<std::size_t>(i)] & 1);
    CHECK(version == kLsbVersion);

    // Everything after the 520-bit payload is zeroed.
    for (std::size_t i = kLsbPayloadBits; i < wm.data.size(); ++i)
        CHECK((wm.data[i] & 1) == 0);

    // Re-watermarking an already-watermarked image still detects (the
    // hash only sees high bits, which the first pass never touched).
    Image wm2 = lsb_watermark(sk, wm);
    CHECK(wm2 == wm);
}

TEST_CASE("detection is fragile to high-bit tampering") {
    auto [sk, pk] = sig_generate(128);
    Image img = generate_corpus_image(23, 0, 32, 32);
    Image wm = lsb_watermark(sk, img);
    REQUIRE(lsb_detect(pk, wm));

    Image tampered = wm;
    tampered.data[1000] = static_cast<std::uint8_t>(tampered.data[1000] + 2);
    CHECK_FALSE(lsb_detect(pk, tampered));

    // Corrupting any single signature bit breaks detection.
    Image sig_hit = wm;
    sig_hit.data[8 + 100] ^= 1;  // inside the 512 signature bits
    CHECK_FALSE(lsb_detect(pk, sig_hit));

    // Wrong version byte reads as not-watermarked, not as an error.
    Image wrong_ver = wm;
    wrong_ver.data[7] ^= 1;
    CHECK_FALSE(lsb_detect(pk, wrong_ver));
}

TEST_CASE("undersized images are rejected gracefully") {
    auto [sk, pk] = sig_generate(128);
    Image tiny(13, 13);  // 507 channel values < 520
    CHECK_THROWS_AS(lsb_watermark(sk, tiny), Error);
    CHECK_FALSE(lsb_detect(pk, tiny));

    Image exact(10, 18);  // 540 values, just enough
    Image wm = lsb_watermark(sk, exact);
    CHECK(lsb_detect(pk, wm));
}

TEST_CASE("distinct images get distinct signatures through the hash") {
    auto [sk, pk] = sig_generate(128);
    Image a = generate_corpus_image(24, 0, 32, 32);
    Image b = generate_corpus_image(24, 1, 32, 32);
    Image wa = lsb_watermark(sk, a), wb = lsb_watermark(sk, b);

    auto sig_bits = [](const Image& img) {
        std::vector<int> bits;
        for (int i = 8; i < 8 + 512; ++i) bits.push_back(img.data[static_cast<std::size_t>(i)] & 1);
        return bits;
    };
    CHECK(sig_bits(wa) != sig_bits(wb));

    // Transplanting a's signature into b fails: the signature binds the
    // image content, not just the key.
    Image forged = b;
    for (int i = 0; i < 8 + 512; ++i) {
        forged.data[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((forged.data[static_cast<std::size_t>(i)] & 0xFE) |
                                      (wa.data[static_cast<std::size_t>(i)] & 1));
    }
    CHECK_FALSE(lsb_detect(pk, forged));
}

TEST_CASE("jpeg re-encoding destroys the watermark (fragile by design)") {
    auto [sk, pk] = sig_generate(128);
    int survived = 0;
    for (int i = 0; i < 20; ++i) {
        Image wm = lsb_watermark(sk, generate_corpus_image(25, i, 64, 64));
        if (lsb_detect(pk, apply(TransformSpec::jpeg(95), wm))) ++survived;
    }
    CHECK(survived == 0);
}

}  // TEST_SUITE

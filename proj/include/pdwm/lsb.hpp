#pragma once

#include "pdwm/image.hpp"
#include "pdwm/sig.hpp"

// Warmup watermark: a signature over the high bits of every channel value,
// carried in the LSB plane. Fragile by design — robustness lives in rpws.
//
// LSB plane layout (raster order, MSB-first within bytes):
//   [8-bit version 0x01][512 signature bits][zeros to the end of the plane]

namespace pdwm {

inline constexpr std::uint8_t kLsbVersion = 0x01;
inline constexpr std::size_t kLsbPayloadBits = 8 + 512;  // 520

// Each channel value divided by 2, packed as 7-bit big-endian values;
// output length = ceil(width*height*3*7 / 8) bytes.
std::vector<std::uint8_t> high_bit_hash(const Image& img);

// Signs high_bit_hash(img) and writes version + signature into the first
// 520 channel LSBs, zeroing the rest. Every value moves by at most 1.
Image lsb_watermark(const SecretKey& sk, const Image& img);

// Public predicate: recompute the hash, read back the signature, verify.
// Undersized images and wrong version bytes yield false, never an error.
bool lsb_detect(const PublicKey& pk, const Image& img);

}  // namespace pdwm

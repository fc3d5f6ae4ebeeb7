#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdwm/image.hpp"

// Post-hoc watermarking scheme: a c-bit message channel over 8x8 block-DCT
// luma coefficients, quantization-index modulation with repetition coding.

namespace pdwm {

struct PgwsParams {
    int capacity_c = 1024;      // message bits
    int block_size = 8;         // fixed; present for config echo
    double qim_step = 20.0;     // lattice step (luma-DCT units)
    int repetition_k = 3;       // odd; majority vote per bit
    std::vector<std::pair<int, int>> carriers = {{2, 1}, {1, 2}, {3, 1}, {1, 3}};  // (u,v) per block
    std::uint64_t prng_seed = 42;  // block permutation; public scheme parameter
    int min_width = 256;
    int min_height = 256;
};

// One bit per element (values 0/1), length = capacity_c.
using PgwsMessage = std::vector<std::uint8_t>;

// The scalar quantizer pair. Lattices of parity 0 sit at multiples of
// step, parity 1 half a step off; a vote reads the parity of the nearest
// half-step multiple.
double qim_quantize(double x, int bit, double step);
int qim_vote(double x, double step);

class Pgws {
  public:
    // Validates the capacity invariant: capacity_c >= 576 and
    // capacity_c * repetition_k <= usable blocks at min size * |carriers|.
    static Pgws generate(int security_bits, PgwsParams params = {});

    Image encode(const Image& img, const PgwsMessage& m) const;
    PgwsMessage decode(const Image& img) const;

    const PgwsParams& params() const { return params_; }

    // Declared robustness set (metadata for reports).
    static const std::vector<std::string>& declared_transforms();

  private:
    explicit Pgws(PgwsParams params) : params_(std::move(params)) {}
    PgwsParams params_;
};

}  // namespace pdwm

#include <array>
#include <cmath>

#include "pdwm/kern/kernels.hpp"
#include "pdwm/pgws.hpp"
#include "pdwm/rng.hpp"

namespace pdwm {
namespace {

// Spatial pattern of one orthonormal 8x8 DCT basis function (u horizontal,
// v vertical). Embedding edits and decoding reads both go through these.
std::array<double, 64> carrier_basis(int u, int v) {
    const double pi = 3.14159265358979323846264338327950288;
    auto c = [&](int j) { return j == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0); };
    std::array<double, 64> b;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            b[y * 8 + x] = c(u) * std::cos(pi * (2 * x + 1) * u / 16.0) *  //
                           c(v) * std::cos(pi * (2 * y + 1) * v / 16.0);
    return b;
}

std::vector<int> block_permutation(int usable, std::uint64_t seed) {
    std::vector<int> perm(usable);
    for (int i = 0; i < usable; ++i) perm[i] = i;
    Rng rng(seed);
    for (int i = usable - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

struct Grid {
    int nbx, nby, usable;
};

Grid grid_of(const Image& img) {
    return {img.width / 8, img.height / 8, (img.width / 8) * (img.height / 8)};
}

}  // namespace

// Nearest lattice point of parity `bit` (lattices interleave at step/2).
double qim_quantize(double x, int bit, double step) {
    const double offset = bit ? step / 2.0 : 0.0;
    return std::round((x - offset) / step) * step + offset;
}

int qim_vote(double x, double step) {
    const long n = std::lround(x / (step / 2.0));
    return static_cast<int>(((n % 2) + 2) % 2);
}

Pgws Pgws::generate(int /*security_bits*/, PgwsParams params) {
    if (params.capacity_c < 576) throw Error("pgws: capacity below 576 = 512 + 64");
    if (params.repetition_k < 1 || params.repetition_k % 2 == 0)
        throw Error("pgws: repetition factor must be odd and positive");
    if (!(params.qim_step > 0.0)) throw Error("pgws: qim step must be positive");
    if (params.block_size != 8) throw Error("pgws: only 8x8 blocks supported");
    if (params.carriers.empty()) throw Error("pgws: carrier list empty");
    for (auto [u, v] : params.carriers)
        if (u < 0 || u > 7 || v < 0 || v > 7 || (u == 0 && v == 0))
            throw Error("pgws: carrier out of range (AC coefficients of an 8x8 block only)");
    const long usable_min =
        static_cast<long>(params.min_width / 8) * (params.min_height / 8);
    const long need = static_cast<long>(params.capacity_c) * params.repetition_k;
    const long have = usable_min * static_cast<long>(params.carriers.size());
    if (need > have)
        throw Error("pgws: capacity infeasible: " + std::to_string(need) + " slots needed, " +
                    std::to_string(have) + " available at minimum image size");
    return Pgws(std::move(params));
}

Image Pgws::encode(const Image& img, const PgwsMessage& m) const {
    if (img.width < params_.min_width || img.height < params_.min_height)
        throw Error("pgws: image too small");
    if (static_cast<int>(m.size()) != params_.capacity_c)
        throw Error("pgws: message length != capacity");

    const Grid g = grid_of(img);
    const int ncar = static_cast<int>(params_.carriers.size());
    const auto perm = block_permutation(g.usable, params_.prng_seed);

    std::vector<std::array<double, 64>> basis;
    basis.reserve(params_.carriers.size());
    for (auto [u, v] : params_.carriers) basis.push_back(carrier_basis(u, v));

    // slot s carries vote s/c of bit s%c and lives at carrier s%ncar of
    // block perm[s/ncar]; the c-stride between votes spreads each bit's
    // copies across distant blocks.
    const int slots = params_.capacity_c * params_.repetition_k;
    std::vector<std::vector<std::pair<int, int>>> assigned(g.usable);  // (carrier, bit)
    for (int s = 0; s < slots; ++s)
        assigned[perm[s / ncar]].push_back({s % ncar, m[s % params_.capacity_c] ? 1 : 0});

    std::vector<double> gray(static_cast<std::size_t>(img.width) * img.height);
    kern::backend().gray_u8(img.data.data(), gray.size(), gray.data());

    Image out = img;
    double block[64], delta[64];
    for (int b = 0; b < g.usable; ++b) {
        if (assigned[b].empty()) continue;
        const int bx = (b % g.nbx) * 8, by = (b / g.nbx) * 8;
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                block[y * 8 + x] = gray[static_cast<std::size_t>(by + y) * img.width + bx + x];
        for (int i = 0; i < 64; ++i) delta[i] = 0.0;
        for (auto [car, bit] : assigned[b]) {
            const double coef = kern::backend().dot_f64(block, basis[car].data(), 64);
            const double dcoef = qim_quantize(coef, bit, params_.qim_step) - coef;
            for (int i = 0; i < 64; ++i) delta[i] += dcoef * basis[car][i];
        }
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) {
                const int di = static_cast<int>(std::lround(delta[y * 8 + x]));
                if (di == 0) continue;
                for (int c = 0; c < 3; ++c) {
                    int v = out.at(bx + x, by + y, c) + di;
                    if (v < 0) v = 0;
                    if (v > 255) v = 255;
                    out.at(bx + x, by + y, c) = static_cast<std::uint8_t>(v);
                }
            }
    }
    return out;
}

PgwsMessage Pgws::decode(const Image& img) const {
    if (img.width < params_.min_width || img.height < params_.min_height)
        throw Error("pgws: image too small");

    const Grid g = grid_of(img);
    const int ncar = static_cast<int>(params_.carriers.size());
    const auto perm = block_permutation(g.usable, params_.prng_seed);

    std::vector<std::array<double, 64>> basis;
    basis.reserve(params_.carriers.size());
    for (auto [u, v] : params_.carriers) basis.push_back(carrier_basis(u, v));

    std::vector<double> gray(static_cast<std::size_t>(img.width) * img.height);
    kern::backend().gray_u8(img.data.data(), gray.size(), gray.data());

    const int slots = params_.capacity_c * params_.repetition_k;
    std::vector<int> votes(params_.capacity_c, 0);
    double block[64];
    int cached_block = -1;
    for (int s = 0; s < slots; ++s) {
        const int b = perm[s / ncar];
        if (b != cached_block) {
            const int bx = (b % g.nbx) * 8, by = (b / g.nbx) * 8;
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    block[y * 8 + x] = gray[static_cast<std::size_t>(by + y) * img.width + bx + x];
            cached_block = b;
        }
        const double coef = kern::backend().dot_f64(block, basis[s % ncar].data(), 64);
        votes[s % params_.capacity_c] += qim_vote(coef, params_.qim_step);
    }

    PgwsMessage m(params_.capacity_c);
    for (int i = 0; i < params_.capacity_c; ++i)
        m[i] = votes[i] * 2 > params_.repetition_k ? 1 : 0;
    return m;
}

const std::vector<std::string>& Pgws::declared_transforms() {
    static const std::vector<std::string> t = {"jpeg quality>=85", "gaussian_noise sigma<=2",
                                               "brightness within +-10%"};
    return t;
}

}  // namespace pdwm

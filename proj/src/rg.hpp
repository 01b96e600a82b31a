#pragma once

#include <cstdint>
#include <vector>

#include "bignum.hpp"

namespace ef::rg {

// Exponentiation generator over a safe prime p of n bits. Each step emits
// t-1 bits where t = 2^level; the hardness margin is c = n - t (at least 128
// in security mode).
struct RgParams {
    BigUint p;
    BigUint g;
    unsigned level = 1; // l, with t = 2^l
    bool security_mode = false;

    unsigned n_bits() const { return static_cast<unsigned>(bit_length(p)); }
    std::uint64_t t() const { return 1ULL << level; }
    std::int64_t hardness_margin() const {
        return static_cast<std::int64_t>(n_bits()) - static_cast<std::int64_t>(t());
    }
    void validate() const;
};

struct RgState {
    BigUint x; // element of Z_{p-1}
};

// t-1 output bits packed into `value` (bit 0 = least significant stream bit).
struct RgOutput {
    BigUint value;
    std::uint64_t nbits = 0;
};

// One iteration: with ghat = g^t mod p and b the first bit of x in n-bit
// fixed width, x' = ghat^(x div t) * g^b mod p; the output is the t-1 least
// significant bits of x' (the discarded first bit of the n-bit form never
// overlaps them). state.x becomes x' reduced into Z_{p-1}.
RgOutput rg_step(RgState& state, const RgParams& params);

std::vector<RgOutput> rg_generate(const BigUint& seed, const RgParams& params,
                                  std::uint64_t count);

// Maps an exponent x onto the chain of square roots: computes x1 = g^(t*x)
// mod p through one rg_step on the seed x*t (which requires x*t < 2^(n-1)
// so the seed's first bit is 0), then `level` times replaces x2 by whichever
// of its two square roots is itself a quadratic residue. The result
// satisfies x2^(2^level) == x1 (mod p); p must be == 3 (mod 4).
BigUint reduction(const BigUint& x, const RgParams& params);

} // namespace ef::rg

#pragma once

#include <cstdint>

#include "bignum.hpp"

namespace ef {

// Output word; k <= 64 bits of it are significant.
using Word = std::uint64_t;

// Multiplicative skip counter w <- a*w (mod p). One instance drives the main
// loop (w1), another the mixing box (w2); an instance must be owned by a
// single generator at a time.
struct SkipState {
    BigUint w;
    BigUint p;
    BigUint a;

    void advance() { w = a * w % p; }
    void validate() const;
};

namespace feistel {

// Feistel-like mixing of a k-bit word x over `nrounds` rounds. Per round,
// with x split as l|r (l = top k/2 bits):
//   l' = r
//   w2 <- a*w2 mod p
//   u  = (w2 + (r xor l))^e2 mod n
//   r' = top k/2 bits of the k-bit value (l xor u)
// `n` is a safe prime of at most k bits. k must be even, a multiple of 8,
// and between 8 and 64. nrounds == 0 returns x unchanged.
Word mix(Word x, std::uint64_t n, SkipState& skip, unsigned k, unsigned nrounds,
         std::uint64_t e2 = 9);

} // namespace feistel
} // namespace ef

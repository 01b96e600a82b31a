#pragma once

#include <cstdint>
#include <utility>

#include "bignum.hpp"
#include "entropy.hpp"

namespace ef::modmath {

// floor(sqrt(n)), verified exact: r*r <= n < (r+1)*(r+1).
BigUint isqrt(const BigUint& n);

// base^exponent mod modulus, modulus >= 2.
BigUint mod_pow(const BigUint& base, const BigUint& exponent, const BigUint& modulus);
std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

// Miller-Rabin. Below 2^64 a fixed witness set gives a deterministic answer;
// above it, `rounds` deterministically-derived witnesses bound the error by
// 4^-rounds. rounds >= 16.
bool is_probable_prime(const BigUint& n, unsigned rounds = 64);

// p > 2, p prime, (p-1)/2 prime.
bool is_safe_prime(const BigUint& p, unsigned rounds = 64);

struct SafePrime {
    BigUint p;
    unsigned bits = 0; // exact bit length of p
};

// Random safe prime of exactly `bits` bits (bits >= 3). Candidates are drawn
// with the top two bits set and stepped by 4 so p == 3 (mod 4) is preserved;
// bit sizes too small for that pattern fall back to picking uniformly from
// the enumerated range.
SafePrime gen_safe_prime(unsigned bits, EntropySource& entropy);

// Least safe prime of exactly `bits` bits (ascending deterministic search).
BigUint smallest_safe_prime(unsigned bits);

// g = p - floor(sqrt(p))^2 for a safe prime p >= 7; generates Z_p*.
BigUint generator_sqrt_rule(const BigUint& p);

// g = (p - z^2) mod p, normalized into [1, p-1], for 2 <= z <= p-2; generates
// Z_p* when p >= 7 is a safe prime.
BigUint generator_z_rule(const BigUint& p, const BigUint& z);

// Order test through the group structure of a safe prime: ord(g) = p-1 iff
// g^2 != 1 and g^((p-1)/2) != 1.
bool is_generator(const BigUint& g, const BigUint& safe_prime);

// Euler criterion; a must not be divisible by p.
bool is_quadratic_residue(const BigUint& a, const BigUint& p);

// Both square roots of a mod p for p == 3 (mod 4), smaller root first.
// Exactly one of the two is itself a quadratic residue.
std::pair<BigUint, BigUint> sqrt_mod(const BigUint& a, const BigUint& p);

} // namespace ef::modmath

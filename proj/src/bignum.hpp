#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "error.hpp"

namespace ef {

// Arbitrary-precision non-negative integer. GMP keeps values in canonical
// form; every routine in this library assumes (and preserves) values >= 0.
using BigUint = mpz_class;

inline std::size_t bit_length(const BigUint& x) {
    return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigUint pow2(unsigned long n) {
    BigUint r = 0;
    mpz_setbit(r.get_mpz_t(), n);
    return r;
}

// x mod 2^n
inline BigUint low_bits(const BigUint& x, unsigned long n) {
    BigUint r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), n);
    return r;
}

inline bool test_bit(const BigUint& x, unsigned long i) {
    return mpz_tstbit(x.get_mpz_t(), i) != 0;
}

// least-significant 64 bits
inline std::uint64_t to_u64(const BigUint& x) { return mpz_get_ui(x.get_mpz_t()); }

// x mod m for a word-sized modulus
inline std::uint64_t mod_u64(const BigUint& x, std::uint64_t m) {
    return mpz_fdiv_ui(x.get_mpz_t(), m);
}

inline std::string to_dec(const BigUint& x) { return x.get_str(10); }

// Decimal or 0x-prefixed hex, non-negative.
inline BigUint parse_biguint(const std::string& s) {
    if (s.empty())
        raise(Errc::parse, "empty integer literal");
    BigUint r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 0) != 0 || sgn(r) < 0)
        raise(Errc::parse, "not a non-negative integer: '" + s + "'");
    return r;
}

} // namespace ef

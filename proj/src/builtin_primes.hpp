#pragma once

#include "bignum.hpp"

namespace ef {

// Precomputed least safe prime of the given exact bit size, or 0 when no
// constant is stored for that size.
BigUint builtin_safe_prime(unsigned bits);

// Builtin constant when available, deterministic ascending search otherwise.
// Both routes return the least safe prime of exactly `bits` bits.
BigUint builtin_safe_prime_or_search(unsigned bits);

} // namespace ef

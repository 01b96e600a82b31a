#include "entropy.hpp"

#include <random>

namespace ef {

BigUint EntropySource::random_bits(unsigned bits) {
    if (bits == 0)
        raise(Errc::invalid_argument, "random_bits: bits must be >= 1");
    BigUint r = 0;
    unsigned remaining = bits;
    while (remaining >= 64) {
        r <<= 64;
        r |= BigUint(next_u64());
        remaining -= 64;
    }
    if (remaining > 0) {
        r <<= remaining;
        r |= BigUint(next_u64() >> (64 - remaining));
    }
    mpz_setbit(r.get_mpz_t(), bits - 1);
    return r;
}

std::uint64_t EntropySource::below(std::uint64_t bound) {
    if (bound == 0)
        raise(Errc::invalid_argument, "below: bound must be >= 1");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

std::uint64_t SystemEntropy::next_u64() {
    static thread_local std::random_device dev;
    return (static_cast<std::uint64_t>(dev()) << 32) ^ dev();
}

std::uint64_t SeededEntropy::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace ef

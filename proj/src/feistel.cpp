#include "feistel.hpp"

#include "modmath.hpp"

namespace ef {

void SkipState::validate() const {
    if (sgn(w) <= 0 || w >= p)
        raise(Errc::config, "skip state: requires 0 < w < p");
    if (a < 2 || a >= p)
        raise(Errc::config, "skip state: generator a out of range");
}

namespace feistel {

Word mix(Word x, std::uint64_t n, SkipState& skip, unsigned k, unsigned nrounds,
         std::uint64_t e2) {
    if (k < 8 || k > 64 || k % 8 != 0)
        raise(Errc::domain, "feistel: word size must be a multiple of 8 in [8, 64]");
    const Word word_mask = (k == 64) ? ~0ULL : (1ULL << k) - 1;
    if (x > word_mask)
        raise(Errc::domain, "feistel: input wider than " + std::to_string(k) + " bits");
    if (n < 2 || (n >> (k - 1)) > 1)
        raise(Errc::domain, "feistel: modulus wider than " + std::to_string(k) + " bits");
    const unsigned half = k / 2;
    const Word half_mask = (1ULL << half) - 1;
    Word r = x & half_mask;
    Word l = x >> half;
    for (unsigned i = 0; i < nrounds; ++i) {
        const Word l_next = r;
        skip.advance();
        const std::uint64_t w2 = mod_u64(skip.w, n);
        const std::uint64_t base =
            static_cast<std::uint64_t>((static_cast<unsigned __int128>(w2) + (r ^ l)) % n);
        std::uint64_t u = modmath::mod_pow_u64(base, e2, n);
        u ^= l; // l zero-extended to k bits
        r = (u & word_mask) >> half;
        l = l_next;
    }
    return (l << half) | r;
}

} // namespace feistel
} // namespace ef

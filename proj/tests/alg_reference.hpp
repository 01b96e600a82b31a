// Stand-alone transcription of the generator loop used to cross-check the
// library. Written directly against the procedure definition with its own
// state handling; no code shared with ef::Prng or ef::feistel beyond the
// arbitrary-precision type.
#pragma once

#include <cstdint>
#include <vector>

#include "bignum.hpp"

namespace alg_ref {

struct Config {
    ef::BigUint q;
    ef::BigUint g;
    unsigned k = 16;
    unsigned s = 6;
    std::uint64_t mr = 2048;
    unsigned nrounds = 4;
    std::uint64_t e1 = 17;
    std::uint64_t e2 = 9;
    ef::BigUint p; // skip modulus
    ef::BigUint a; // skip generator
    bool stretch = false;
};

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * b % m);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

struct Machine {
    Config cfg;
    std::vector<std::uint64_t> table;
    ef::BigUint w1, w2, x0;
    std::vector<std::uint64_t> idx;
    std::uint64_t steps = 0;

    Machine(Config c, std::vector<std::uint64_t> tab, std::uint64_t seed,
            std::vector<std::uint64_t> indexes)
        : cfg(std::move(c)), table(std::move(tab)), idx(std::move(indexes)) {
        w1 = (ef::BigUint(seed) % (cfg.p - 1)) + 1;
        w2 = (ef::BigUint(seed) + 5) % (cfg.p - 1) + 1;
        x0 = seed;
    }

    std::uint64_t mix(std::uint64_t x, std::uint64_t n) {
        const unsigned half = cfg.k / 2;
        const std::uint64_t half_mask = (1ULL << half) - 1;
        const std::uint64_t word_mask = (cfg.k == 64) ? ~0ULL : (1ULL << cfg.k) - 1;
        std::uint64_t r0 = x & half_mask;
        std::uint64_t l0 = x >> half;
        for (unsigned i = 0; i < cfg.nrounds; ++i) {
            const std::uint64_t l1 = r0;
            w2 = cfg.a * w2 % cfg.p;
            const std::uint64_t w2n = mpz_fdiv_ui(w2.get_mpz_t(), n);
            const std::uint64_t base = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(w2n) + (r0 ^ l0)) % n);
            std::uint64_t u = powmod_u64(base, cfg.e2, n);
            u ^= l0;
            const std::uint64_t r1 = (u & word_mask) >> half;
            l0 = l1;
            r0 = r1;
        }
        return (l0 << half) | r0;
    }

    // one pass of the chain, returning z words most significant first
    std::vector<std::uint64_t> pipeline() {
        w1 = cfg.a * w1 % cfg.p;
        x0 = (x0 + w1) % table[idx[0]];
        std::vector<std::uint64_t> xs{ef::to_u64(x0)};
        for (unsigned j = 1; j + 1 < cfg.s; ++j)
            xs.push_back(powmod_u64(xs.back(), cfg.e1, table[idx[j]]));
        ef::BigUint x = (ef::BigUint(xs[cfg.s - 3]) << cfg.k) + xs[cfg.s - 2];
        ef::BigUint y;
        mpz_powm(y.get_mpz_t(), cfg.g.get_mpz_t(), x.get_mpz_t(), cfg.q.get_mpz_t());
        const unsigned t = static_cast<unsigned>(ef::bit_length(cfg.q)) - 1 - cfg.k;
        unsigned tp = cfg.k * (t / cfg.k);
        if (cfg.stretch)
            tp += cfg.k;
        ef::BigUint z = ef::low_bits(y, tp);
        const unsigned m = tp / cfg.k;
        std::vector<std::uint64_t> zs(m);
        for (unsigned j = 0; j < m; ++j) {
            zs[m - 1 - j] = ef::to_u64(ef::low_bits(z, cfg.k));
            z >>= cfg.k;
        }
        return zs;
    }

    void refresh() {
        const std::uint64_t nf = table[idx[cfg.s - 1]];
        const std::vector<std::uint64_t> zs = pipeline();
        unsigned r = 0;
        while ((1ULL << (r + 1)) <= table.size())
            ++r;
        for (unsigned j = 0; j < cfg.s; ++j)
            idx[j] = mix(zs[j], nf) % (1ULL << r);
    }

    std::vector<std::uint64_t> step_words() {
        if (steps > 0 && steps % cfg.mr == 0)
            refresh();
        const std::uint64_t nf = table[idx[cfg.s - 1]];
        const std::vector<std::uint64_t> zs = pipeline();
        x0 = mix(zs[0], nf);
        std::vector<std::uint64_t> out;
        for (std::size_t j = 1; j < zs.size(); ++j)
            out.push_back(mix(zs[j], nf));
        ++steps;
        return out;
    }

    std::vector<std::uint64_t> generate(std::size_t n) {
        std::vector<std::uint64_t> out;
        while (out.size() < n) {
            const std::vector<std::uint64_t> w = step_words();
            out.insert(out.end(), w.begin(), w.end());
        }
        out.resize(n);
        return out;
    }
};

} // namespace alg_ref

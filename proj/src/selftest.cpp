#include "selftest.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <vector>

#include "builtin_primes.hpp"
#include "feistel.hpp"
#include "modmath.hpp"
#include "prime_table.hpp"
#include "prng.hpp"
#include "rg.hpp"

namespace ef {
namespace {

struct Checker {
    std::ostream* log = nullptr;
    int failures = 0;

    void check(bool ok, const char* name) {
        if (!ok)
            ++failures;
        if (log)
            *log << (ok ? "ok   - " : "FAIL - ") << name << '\n';
    }
};

void check_modpow(Checker& c) {
    using modmath::mod_pow;
    c.check(mod_pow(20, 9, 227) == 211, "mod_pow 20^9 mod 227");
    c.check(mod_pow(5, 0, 7) == 1, "mod_pow zero exponent");
    c.check(mod_pow(2, 10, 11) == 1, "mod_pow Fermat 2^10 mod 11");
}

void check_feistel_trace(Checker& c) {
    SkipState skip{BigUint(5), BigUint(23), BigUint(7)};
    const Word out = feistel::mix(179, 227, skip, 8, 1, 9);
    c.check(out == 61, "mixing box trace 179 -> 61");
    c.check(skip.w == 12, "mixing box trace advances w2 to 12");
    SkipState idle{BigUint(5), BigUint(23), BigUint(7)};
    c.check(feistel::mix(179, 227, idle, 8, 0, 9) == 179 && idle.w == 5,
            "mixing box zero rounds is identity");
}

void check_tables(Checker& c) {
    const PrimeTable t8 = PrimeTable::build(8, 0);
    c.check(t8.entries() == std::vector<std::uint64_t>{167, 179, 227},
            "8-bit safe primes are {167, 179, 227}");
    const PrimeTable t16 = PrimeTable::build(16, 0);
    c.check(t16.count() == 193 && t16.get(0) == 32843 && t16.get(192) == 65267,
            "16-bit safe prime table has 193 entries, 32843..65267");
    c.check(t16.index_exponent() == 7, "16-bit table index exponent r = 7");
}

void check_builtin_primes(Checker& c) {
    for (unsigned bits : {16u, 32u, 48u, 64u, 80u, 96u, 112u, 128u, 160u, 256u, 260u,
                          512u, 1024u, 2048u}) {
        const BigUint p = builtin_safe_prime(bits);
        const bool ok = sgn(p) != 0 && bit_length(p) == bits && modmath::is_safe_prime(p);
        c.check(ok, ("builtin " + std::to_string(bits) + "-bit safe prime").c_str());
    }
}

PrngParams toy_params(unsigned qbits, std::uint64_t refresh_period) {
    PrngParams p;
    p.q = builtin_safe_prime(qbits);
    p.word_bits = 16;
    p.index_count = 6;
    p.refresh_period = refresh_period;
    p.feistel_rounds = 4;
    return finish_params(std::move(p));
}

void check_generator_kats(Checker& c) {
    const PrimeTable table = PrimeTable::build(16, 0);

    // vector A: 80-bit q, explicit index set, seed 12345
    {
        Prng prng(toy_params(80, 2048), table, 12345,
                  std::vector<std::uint64_t>{1, 3, 5, 7, 11, 13});
        c.check(prng.skip_w1() == 12346 && prng.skip_w2() == 12351,
                "vector A skip seeding (12346, 12351)");
        static constexpr std::array<Word, 8> expected = {30816, 20756, 7489, 33905,
                                                         9494,  25957, 14354, 13665};
        const std::vector<Word> got = prng.generate(8);
        c.check(std::equal(expected.begin(), expected.end(), got.begin()),
                "vector A first 8 words");
    }

    // vector B: 260-bit q, bootstrap-derived indexes, refresh every 4 steps
    {
        Prng prng(toy_params(260, 4), table, 777);
        c.check(prng.indexes() == std::vector<std::uint64_t>{51, 60, 8, 82, 79, 40},
                "vector B bootstrap index derivation");
        const std::vector<Word> got = prng.generate(64);
        const bool head = got[0] == 4484 && got[1] == 25714 && got[2] == 18759 &&
                          got[3] == 37706 && got[4] == 22314 && got[5] == 36159 &&
                          got[6] == 14645 && got[7] == 3114;
        const bool tail = got[60] == 14201 && got[61] == 33127 && got[62] == 43540 &&
                          got[63] == 9100;
        c.check(head, "vector B first 8 words");
        c.check(tail, "vector B words 61..64 (across an index refresh)");
        c.check(prng.indexes() == std::vector<std::uint64_t>{3, 71, 91, 108, 81, 76},
                "vector B index set after the step-4 refresh");
    }
}

void check_rg(Checker& c) {
    rg::RgParams params{BigUint(23), BigUint(5), 1, false};
    {
        const auto out = rg::rg_generate(BigUint(4), params, 4);
        bool ok = true;
        for (const auto& o : out)
            ok = ok && o.nbits == 1 && o.value == 0;
        c.check(ok, "rg vector x0=4 emits 0,0,0,0");
    }
    {
        rg::RgState st{BigUint(7)};
        static constexpr std::array<unsigned, 4> bits = {0, 0, 1, 1};
        static constexpr std::array<unsigned, 4> states = {8, 16, 15, 13};
        bool ok = true;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto o = rg::rg_step(st, params);
            ok = ok && o.value == bits[i] && st.x == states[i];
        }
        c.check(ok, "rg vector x0=7 emits 0,0,1,1 with states 8,16,15,13");
    }
}

void check_reduction(Checker& c) {
    rg::RgParams params{BigUint(23), BigUint(5), 1, false};
    static constexpr std::array<unsigned, 8> expected = {1, 18, 2, 13, 4, 3, 8, 6};
    bool ok = true;
    for (unsigned x = 0; x < 8; ++x) {
        const BigUint x2 = rg::reduction(BigUint(x), params);
        const BigUint x1 = modmath::mod_pow(5, BigUint(2 * x), 23);
        ok = ok && x2 == expected[x] && x2 * x2 % 23 == x1;
    }
    c.check(ok, "square-root chain on p=23, level 1, x=0..7");
}

} // namespace

int run_selftest(std::ostream* log) {
    Checker c{log};
    check_modpow(c);
    check_feistel_trace(c);
    check_tables(c);
    check_builtin_primes(c);
    check_generator_kats(c);
    check_rg(c);
    check_reduction(c);
    if (log) {
        if (c.failures == 0)
            *log << "selftest: all checks passed\n";
        else
            *log << "selftest: " << c.failures << " check(s) FAILED\n";
    }
    return c.failures == 0 ? 0 : 1;
}

} // namespace ef

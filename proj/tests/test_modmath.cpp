#include <doctest.h>

#include "entropy.hpp"
#include "modmath.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ef;
using namespace ef::modmath;
using testutil::raises;

TEST_CASE("mod_pow known values") {
    CHECK(mod_pow(20, 9, 227) == 211);
    CHECK(mod_pow(2, 10, 11) == 1);
    CHECK(mod_pow(0, 0, 2) == 1);
    CHECK(mod_pow(123456789, 0, 97) == 1);
    CHECK(mod_pow(BigUint("0x123456789abcdef"), 0, 5) == 1);
    CHECK(raises(Errc::domain, [] { mod_pow(2, 3, 1); }));
    CHECK(raises(Errc::domain, [] { mod_pow(2, 3, 0); }));
    CHECK(raises(Errc::domain, [] { mod_pow_u64(2, 3, 1); }));
}

TEST_CASE("mod_pow agrees with naive repeated multiplication") {
    SeededEntropy ent(0x5eed);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t mod = 2 + ent.below((1ULL << 16) - 2);
        const std::uint64_t exp = ent.below(1ULL << 10);
        const std::uint64_t base = ent.below(1ULL << 16);
        const std::uint64_t want = oracle::mod_pow_naive(base, exp, mod);
        CHECK(mod_pow_u64(base, exp, mod) == want);
        CHECK(mod_pow(BigUint(base), BigUint(exp), BigUint(mod)) == want);
    }
}

TEST_CASE("is_probable_prime matches trial division below 10^6") {
    // sieve oracle
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit, false);
    for (std::uint32_t i = 2; static_cast<std::uint64_t>(i) * i < limit; ++i)
        if (!composite[i])
            for (std::uint32_t j = i * i; j < limit; j += i)
                composite[j] = true;
    for (std::uint32_t n = 0; n < limit; ++n) {
        const bool expect = n >= 2 && !composite[n];
        if (is_probable_prime(BigUint(n)) != expect) {
            CAPTURE(n);
            REQUIRE(false);
        }
    }
}

TEST_CASE("is_probable_prime specifics") {
    CHECK_FALSE(is_probable_prime(561));  // Carmichael: 3 * 11 * 17
    CHECK(is_probable_prime(7919));
    CHECK_FALSE(is_probable_prime(4));
    CHECK_FALSE(is_probable_prime(0));
    CHECK_FALSE(is_probable_prime(1));
    CHECK(is_probable_prime(BigUint("18446744073709551557"))); // largest 64-bit prime
    // 2^89 - 1 is prime, 2^67 - 1 = 193707721 * 761838257287 is not
    CHECK(is_probable_prime((BigUint(1) << 89) - 1));
    CHECK_FALSE(is_probable_prime((BigUint(1) << 67) - 1));
    CHECK(raises(Errc::invalid_argument, [] { is_probable_prime(101, 8); }));
}

TEST_CASE("is_safe_prime") {
    CHECK(is_safe_prime(5));
    CHECK(is_safe_prime(7));
    CHECK_FALSE(is_safe_prime(13)); // (13-1)/2 = 6
    CHECK(is_safe_prime(23));
    CHECK_FALSE(is_safe_prime(2));
    CHECK_FALSE(is_safe_prime(3));
    for (std::uint64_t p = 3; p < 3000; p += 2)
        CHECK(is_safe_prime(BigUint(p)) == oracle::is_safe_prime(p));
}

TEST_CASE("gen_safe_prime produces exact-width safe primes") {
    SeededEntropy ent(7);
    for (int rep = 0; rep < 25; ++rep) {
        const SafePrime sp = gen_safe_prime(8, ent);
        CHECK(sp.bits == 8);
        CHECK(bit_length(sp.p) == 8);
        CHECK(is_safe_prime(sp.p));
        const std::uint64_t v = to_u64(sp.p);
        CHECK((v == 167 || v == 179 || v == 227));
    }
    for (int rep = 0; rep < 10; ++rep) {
        CHECK(gen_safe_prime(4, ent).p == 11);
        const std::uint64_t v3 = to_u64(gen_safe_prime(3, ent).p);
        CHECK((v3 == 5 || v3 == 7));
        CHECK(to_u64(gen_safe_prime(5, ent).p) == 23);
    }
    const SafePrime big = gen_safe_prime(48, ent);
    CHECK(bit_length(big.p) == 48);
    CHECK(is_safe_prime(big.p));
    CHECK(raises(Errc::domain, [&] { gen_safe_prime(2, ent); }));
}

TEST_CASE("smallest_safe_prime") {
    CHECK(smallest_safe_prime(3) == 5);
    CHECK(smallest_safe_prime(4) == 11);
    CHECK(smallest_safe_prime(5) == 23);
    CHECK(smallest_safe_prime(8) == 167);
    CHECK(smallest_safe_prime(16) == 32843);
    CHECK(smallest_safe_prime(32) == 2147483783);
}

TEST_CASE("generator_sqrt_rule known values and small-prime orders") {
    CHECK(generator_sqrt_rule(7) == 3);
    CHECK(generator_sqrt_rule(11) == 2);
    CHECK(generator_sqrt_rule(23) == 7);
    CHECK(raises(Errc::domain, [] { generator_sqrt_rule(5); }));
    for (std::uint64_t p : oracle::safe_primes_in(7, 1000)) {
        const std::uint64_t g = to_u64(generator_sqrt_rule(BigUint(p)));
        CHECK(oracle::mult_order(g, p) == p - 1);
        CHECK(is_generator(BigUint(g), BigUint(p)));
    }
}

TEST_CASE("generator_z_rule known values and small-prime orders") {
    CHECK(generator_z_rule(7, 2) == 3);
    CHECK(generator_z_rule(7, 3) == 5);
    CHECK(generator_z_rule(11, 4) == 6);
    CHECK(raises(Errc::domain, [] { generator_z_rule(11, 1); }));
    CHECK(raises(Errc::domain, [] { generator_z_rule(11, 10); }));
    CHECK(raises(Errc::domain, [] { generator_z_rule(5, 2); }));
    for (std::uint64_t p : oracle::safe_primes_in(7, 200))
        for (std::uint64_t z = 2; z <= p - 2; ++z) {
            const std::uint64_t g = to_u64(generator_z_rule(BigUint(p), BigUint(z)));
            CHECK(g >= 1);
            CHECK(g <= p - 1);
            CHECK(oracle::mult_order(g, p) == p - 1);
        }
}

TEST_CASE("is_quadratic_residue") {
    CHECK(is_quadratic_residue(4, 7));
    CHECK_FALSE(is_quadratic_residue(3, 7)); // squares mod 7: {1, 2, 4}
    CHECK_FALSE(is_quadratic_residue(5, 7));
    CHECK(is_quadratic_residue(2, 7));
    for (std::uint64_t p : oracle::safe_primes_in(7, 500))
        CHECK_FALSE(is_quadratic_residue(BigUint(p - 1), BigUint(p))); // -1 is never a QR
    CHECK(raises(Errc::domain, [] { is_quadratic_residue(14, 7); }));
    CHECK(raises(Errc::domain, [] { is_quadratic_residue(3, 8); }));
}

TEST_CASE("sqrt_mod known values") {
    CHECK(sqrt_mod(4, 7) == std::pair<BigUint, BigUint>(2, 5));
    CHECK(sqrt_mod(2, 7) == std::pair<BigUint, BigUint>(3, 4));
    CHECK(sqrt_mod(1, 7) == std::pair<BigUint, BigUint>(1, 6));
    CHECK(sqrt_mod(1, 23) == std::pair<BigUint, BigUint>(1, 22));
    CHECK(raises(Errc::no_root, [] { sqrt_mod(3, 7); }));
    CHECK(raises(Errc::unsupported_modulus, [] { sqrt_mod(4, 13); }));
}

TEST_CASE("sqrt_mod pair structure over all residues of safe primes < 1000") {
    for (std::uint64_t p : oracle::safe_primes_in(7, 1000)) {
        const BigUint bp(p);
        for (std::uint64_t a = 1; a < p; ++a) {
            if (!is_quadratic_residue(BigUint(a), bp))
                continue;
            const auto [w1, w2] = sqrt_mod(BigUint(a), bp);
            CHECK(w1 <= w2);
            CHECK(w1 * w1 % bp == a);
            CHECK(w2 * w2 % bp == a);
            const int qr_count = static_cast<int>(is_quadratic_residue(w1, bp)) +
                                 static_cast<int>(is_quadratic_residue(w2, bp));
            CHECK(qr_count == 1);
        }
    }
}

TEST_CASE("isqrt exact floors") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(17) == 4);
    const BigUint big = (BigUint(1) << 128) - 1;
    const BigUint r = isqrt(big);
    CHECK(r * r <= big);
    CHECK((r + 1) * (r + 1) > big);
}

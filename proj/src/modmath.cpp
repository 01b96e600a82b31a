#include "modmath.hpp"

#include <array>
#include <vector>

namespace ef::modmath {
namespace {

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 8192;
        std::vector<bool> sieve(limit, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (!sieve[i])
                continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < limit; j += i)
                sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// One Miller-Rabin round; n odd >= 3, n-1 = d * 2^s.
bool witness_passes(const BigUint& n, const BigUint& witness, const BigUint& d, unsigned long s) {
    BigUint a = witness % n;
    if (sgn(a) == 0)
        return true;
    BigUint x = mod_pow(a, d, n);
    const BigUint n1 = n - 1;
    if (x == 1 || x == n1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n1)
            return true;
    }
    return false;
}

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

BigUint isqrt(const BigUint& n) {
    if (sgn(n) < 0)
        raise(Errc::domain, "isqrt: negative input");
    BigUint r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r > n || (r + 1) * (r + 1) <= n)
        raise(Errc::internal, "isqrt: floor verification failed");
    return r;
}

BigUint mod_pow(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
    if (modulus < 2)
        raise(Errc::domain, "mod_pow: modulus must be >= 2");
    BigUint r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

std::uint64_t mod_pow_u64(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus < 2)
        raise(Errc::domain, "mod_pow: modulus must be >= 2");
    std::uint64_t result = 1;
    std::uint64_t b = base % modulus;
    while (exponent > 0) {
        if (exponent & 1)
            result = mul_mod(result, b, modulus);
        b = mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    return result;
}

bool is_probable_prime(const BigUint& n, unsigned rounds) {
    if (rounds < 16)
        raise(Errc::invalid_argument, "is_probable_prime: rounds must be >= 16");
    if (n < 2)
        return false;
    for (std::uint32_t p : small_primes()) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    // decompose n-1 = d * 2^s
    const BigUint n1 = n - 1;
    const unsigned long s = mpz_scan1(n1.get_mpz_t(), 0);
    BigUint d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), n1.get_mpz_t(), s);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // sufficient for every n < 3.3 * 10^24 (Sorenson & Webster)
        static constexpr std::array<unsigned, 12> witnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
        for (unsigned w : witnesses)
            if (!witness_passes(n, BigUint(w), d, s))
                return false;
        return true;
    }
    std::uint64_t state = to_u64(n) ^ 0xd1b54a32d192ed03ULL;
    for (unsigned i = 0; i < rounds; ++i) {
        // witness in [2, n-2], derived deterministically from n
        BigUint w = 0;
        const std::size_t nbits = bit_length(n);
        for (std::size_t produced = 0; produced < nbits + 64; produced += 64) {
            w <<= 64;
            w |= BigUint(splitmix(state));
        }
        w = w % (n - 3) + 2;
        if (!witness_passes(n, w, d, s))
            return false;
    }
    return true;
}

bool is_safe_prime(const BigUint& p, unsigned rounds) {
    if (p <= 2)
        return false;
    return is_probable_prime(p, rounds) && is_probable_prime((p - 1) / 2, rounds);
}

SafePrime gen_safe_prime(unsigned bits, EntropySource& entropy) {
    if (bits < 3)
        raise(Errc::domain, "gen_safe_prime: there are no safe primes below 3 bits");
    if (bits <= 5) {
        // Ranges this small can lack candidates with the top two bits set
        // (e.g. the only 5-bit safe prime is 23 = 10111); pick uniformly from
        // the enumerated range instead.
        std::vector<BigUint> found;
        for (BigUint c = pow2(bits - 1) + 1; bit_length(c) == bits; c += 2)
            if (is_safe_prime(c))
                found.push_back(c);
        if (found.empty())
            raise(Errc::exhausted, "gen_safe_prime: no safe primes of " + std::to_string(bits) +
                                       " bits");
        const BigUint& p = found[entropy.below(found.size())];
        return SafePrime{p, bits};
    }
    const BigUint top = pow2(bits) - 1;
    for (;;) {
        BigUint c = entropy.random_bits(bits);
        mpz_setbit(c.get_mpz_t(), bits - 2);
        c |= 3; // p == 3 (mod 4)
        while (c <= top) {
            if (is_safe_prime(c))
                return SafePrime{c, bits};
            c += 4;
        }
    }
}

BigUint smallest_safe_prime(unsigned bits) {
    if (bits < 3)
        raise(Errc::domain, "smallest_safe_prime: there are no safe primes below 3 bits");
    if (bits == 3)
        return BigUint(5); // the one safe prime not congruent to 3 mod 4
    BigUint c = pow2(bits - 1) + 3; // 2^(bits-1) == 0 (mod 4)
    const BigUint top = pow2(bits) - 1;
    for (; c <= top; c += 4)
        if (is_safe_prime(c))
            return c;
    raise(Errc::exhausted, "smallest_safe_prime: no safe prime of " + std::to_string(bits) +
                               " bits");
}

BigUint generator_sqrt_rule(const BigUint& p) {
    if (p < 7)
        raise(Errc::domain, "generator_sqrt_rule: requires a safe prime p >= 7");
    const BigUint r = isqrt(p);
    return p - r * r;
}

BigUint generator_z_rule(const BigUint& p, const BigUint& z) {
    if (p < 7)
        raise(Errc::domain, "generator_z_rule: requires a safe prime p >= 7");
    if (z < 2 || z > p - 2)
        raise(Errc::domain, "generator_z_rule: z must satisfy 2 <= z <= p-2");
    BigUint g = (p - z * z % p) % p;
    if (sgn(g) == 0)
        raise(Errc::internal, "generator_z_rule: z^2 divisible by p");
    return g;
}

bool is_generator(const BigUint& g, const BigUint& safe_prime) {
    const BigUint& p = safe_prime;
    if (p < 5)
        raise(Errc::domain, "is_generator: requires a safe prime p >= 5");
    BigUint a = g % p;
    if (sgn(a) == 0)
        return false;
    if (a * a % p == 1)
        return false; // order 1 or 2
    return mod_pow(a, (p - 1) / 2, p) != 1;
}

bool is_quadratic_residue(const BigUint& a, const BigUint& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        raise(Errc::domain, "is_quadratic_residue: p must be an odd prime");
    const BigUint r = a % p;
    if (sgn(r) == 0)
        raise(Errc::domain, "is_quadratic_residue: a is divisible by p");
    return mod_pow(r, (p - 1) / 2, p) == 1;
}

std::pair<BigUint, BigUint> sqrt_mod(const BigUint& a, const BigUint& p) {
    if (mod_u64(p, 4) != 3)
        raise(Errc::unsupported_modulus, "sqrt_mod: requires p == 3 (mod 4)");
    if (!is_quadratic_residue(a, p))
        raise(Errc::no_root, "sqrt_mod: a is not a quadratic residue mod p");
    const BigUint w = mod_pow(a % p, (p + 1) / 4, p);
    BigUint other = p - w;
    if (w <= other)
        return {w, other};
    return {other, w};
}

} // namespace ef::modmath

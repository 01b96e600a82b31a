#include "rg.hpp"

#include "modmath.hpp"

namespace ef::rg {

void RgParams::validate() const {
    if (!modmath::is_safe_prime(p))
        raise(Errc::config, "rg: p must be a safe prime");
    if (level >= 63 || t() >= n_bits())
        raise(Errc::config, "rg: requires t = 2^level < bit length of p");
    if (!modmath::is_generator(g, p))
        raise(Errc::config, "rg: g does not generate Z_p*");
    if (security_mode && hardness_margin() < 128)
        raise(Errc::config, "rg: security mode requires hardness margin c >= 128");
}

RgOutput rg_step(RgState& state, const RgParams& params) {
    const BigUint& p = params.p;
    const unsigned n = params.n_bits();
    const std::uint64_t t = params.t();
    if (sgn(state.x) < 0 || state.x >= p - 1)
        raise(Errc::domain, "rg: state must lie in Z_{p-1}");
    const BigUint ghat = modmath::mod_pow(params.g, BigUint(t), p);
    const bool first_bit = test_bit(state.x, n - 1);
    BigUint quotient = state.x >> params.level; // x div t
    BigUint next = modmath::mod_pow(ghat, quotient, p);
    if (first_bit)
        next = next * params.g % p;
    RgOutput out{low_bits(next, t - 1), t - 1};
    // keep the state inside Z_{p-1}; only x' = p-1 needs the wrap
    state.x = (next == p - 1) ? BigUint(0) : next;
    return out;
}

std::vector<RgOutput> rg_generate(const BigUint& seed, const RgParams& params,
                                  std::uint64_t count) {
    if (count < 1)
        raise(Errc::invalid_argument, "rg_generate: need count >= 1");
    params.validate();
    RgState state{seed};
    std::vector<RgOutput> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(rg_step(state, params));
    return out;
}

BigUint reduction(const BigUint& x, const RgParams& params) {
    const BigUint& p = params.p;
    params.validate();
    if (mod_u64(p, 4) != 3)
        raise(Errc::unsupported_modulus, "reduction: requires p == 3 (mod 4)");
    const unsigned n = params.n_bits();
    BigUint seed = x << params.level; // x*t
    if (sgn(x) < 0 || seed >= pow2(n - 1))
        raise(Errc::domain,
              "reduction: x*t must fit below 2^(n-1) so the seed's first bit is 0");
    RgState state{seed};
    rg_step(state, params); // computes g^(t*x): first bit 0, (x*t) div t = x
    const BigUint x1 = modmath::mod_pow(params.g, seed, p);
    if (state.x != x1 && !(sgn(state.x) == 0 && x1 == p - 1))
        raise(Errc::integrity, "reduction: generator step disagrees with direct power");
    BigUint x2 = x1;
    for (unsigned i = 0; i < params.level; ++i) {
        std::pair<BigUint, BigUint> roots;
        try {
            roots = modmath::sqrt_mod(x2, p);
        } catch (const Error& e) {
            if (e.code() == Errc::no_root)
                raise(Errc::integrity,
                      "reduction: intermediate lost quadratic residuosity (corrupt parameters)");
            throw;
        }
        x2 = modmath::is_quadratic_residue(roots.first, p) ? roots.first : roots.second;
    }
    return x2;
}

} // namespace ef::rg

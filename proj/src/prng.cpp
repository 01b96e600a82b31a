#include "prng.hpp"

#include <bit>

#include "builtin_primes.hpp"
#include "modmath.hpp"

namespace ef {

unsigned PrngParams::hard_bits() const {
    const std::size_t qbits = bit_length(q);
    if (qbits < word_bits + 2)
        raise(Errc::config, "params: q must be wider than the word size");
    return static_cast<unsigned>(qbits - 1) - word_bits;
}

unsigned PrngParams::kept_bits() const {
    const unsigned t = hard_bits();
    const unsigned whole = word_bits * (t / word_bits);
    return stretch ? whole + word_bits : whole;
}

void PrngParams::validate(const PrimeTable& table) const {
    if (word_bits < 8 || word_bits > 64 || word_bits % 8 != 0)
        raise(Errc::config, "params: word size k must be a multiple of 8 in [8, 64]");
    if (index_count < 4)
        raise(Errc::config, "params: need s >= 4 index positions");
    if (refresh_period < 1)
        raise(Errc::config, "params: refresh period must be >= 1");
    if (std::popcount(chain_exponent) != 2 || std::popcount(mix_exponent) != 2)
        raise(Errc::config, "params: exponents e1 and e2 must have exactly two set bits");
    if (security_mode) {
        if (bit_length(q) < 1024)
            raise(Errc::config, "params: security mode requires q of at least 1024 bits");
        if (word_bits < 32)
            raise(Errc::config, "params: security mode requires k >= 32");
        if (index_count < 6)
            raise(Errc::config, "params: security mode requires s >= 6");
    }
    if (!modmath::is_safe_prime(q))
        raise(Errc::config, "params: q is not a safe prime");
    const unsigned t = hard_bits();
    if (t < word_bits)
        raise(Errc::config, "params: q too small, needs floor(log2 q) >= 2k");
    if (kept_bits() < 2 * word_bits)
        raise(Errc::config,
              "params: q too small to emit output words, needs floor(log2 q) >= 3k");
    if (!modmath::is_generator(g, q))
        raise(Errc::config, "params: g does not generate Z_q*");
    if (bit_length(skip_modulus) != 2 * static_cast<std::size_t>(word_bits))
        raise(Errc::config, "params: skip prime p must have exactly 2k bits");
    if (!modmath::is_safe_prime(skip_modulus))
        raise(Errc::config, "params: skip modulus p is not a safe prime");
    if (!modmath::is_generator(skip_generator, skip_modulus))
        raise(Errc::config, "params: a does not generate Z_p*");
    if (table.bits() != word_bits)
        raise(Errc::config, "params: table holds " + std::to_string(table.bits()) +
                                "-bit primes but k = " + std::to_string(word_bits));
}

PrngParams finish_params(PrngParams params) {
    if (sgn(params.g) == 0 && sgn(params.q) != 0)
        params.g = modmath::generator_sqrt_rule(params.q);
    if (sgn(params.skip_modulus) == 0) {
        params.skip_modulus = builtin_safe_prime_or_search(2 * params.word_bits);
        params.skip_generator = 0;
    }
    if (sgn(params.skip_generator) == 0)
        params.skip_generator = modmath::generator_sqrt_rule(params.skip_modulus);
    return params;
}

Prng::Prng(PrngParams params, const PrimeTable& table, std::uint64_t seed,
           std::optional<std::vector<std::uint64_t>> indexes)
    : params_(std::move(params)), table_(table) {
    params_.validate(table_);
    if (seed > kMaxSeed)
        raise(Errc::config, "seed out of range [0, 2^32]");
    const BigUint& p = params_.skip_modulus;
    w1_ = SkipState{BigUint(seed) % (p - 1) + 1, p, params_.skip_generator};
    w2_ = SkipState{(BigUint(seed) + 5) % (p - 1) + 1, p, params_.skip_generator};
    w1_.validate();
    w2_.validate();
    x0_ = seed;
    if (indexes) {
        if (indexes->size() != params_.index_count)
            raise(Errc::config, "index set: expected " + std::to_string(params_.index_count) +
                                    " entries, got " + std::to_string(indexes->size()));
        for (std::uint64_t i : *indexes)
            if (i >= table_.count())
                raise(Errc::config, "index set: " + std::to_string(i) +
                                        " exceeds table count " + std::to_string(table_.count()));
        indexes_ = std::move(*indexes);
    } else {
        indexes_.assign(params_.index_count, 0);
        refresh_indexes();
    }
}

std::vector<Word> Prng::pipeline() {
    const unsigned k = params_.word_bits;
    const unsigned s = params_.index_count;
    w1_.advance();
    {
        BigUint sum = w1_.w + x0_;
        x0_ = mod_u64(sum, table_.get(indexes_[0]));
    }
    // x_j = x_{j-1}^e1 mod p_{i_j}, ending with the last two chain values
    std::uint64_t prev = x0_;
    std::uint64_t second_last = x0_;
    for (unsigned j = 1; j + 1 < s; ++j) {
        second_last = prev;
        prev = modmath::mod_pow_u64(prev, params_.chain_exponent, table_.get(indexes_[j]));
    }
    BigUint x = BigUint(second_last) << k;
    x |= BigUint(prev);
    const BigUint y = modmath::mod_pow(params_.g, x, params_.q);
    const unsigned kept = params_.kept_bits();
    BigUint z = low_bits(y, kept);
    const unsigned m = kept / k;
    std::vector<Word> words(m);
    for (unsigned j = 0; j < m; ++j) { // fill z_m first, z_1 last
        words[m - 1 - j] = to_u64(low_bits(z, k));
        z >>= k;
    }
    return words;
}

void Prng::refresh_indexes() {
    const unsigned s = params_.index_count;
    const std::uint64_t mix_modulus = table_.get(indexes_[s - 1]);
    std::vector<Word> z = pipeline();
    if (z.size() < s)
        raise(Errc::config, "index refresh: needs s <= " + std::to_string(z.size()) +
                                " words per iteration, have s = " + std::to_string(s));
    const std::uint64_t index_mask = (1ULL << table_.index_exponent()) - 1;
    for (unsigned j = 0; j < s; ++j)
        indexes_[j] = feistel::mix(z[j], mix_modulus, w2_, params_.word_bits,
                                   params_.feistel_rounds, params_.mix_exponent) &
                      index_mask;
}

Prng::StepTrace Prng::step() {
    StepTrace trace;
    trace.step_index = steps_;
    if (steps_ > 0 && steps_ % params_.refresh_period == 0) {
        refresh_indexes();
        trace.refreshed = true;
    }
    trace.indexes = indexes_;
    const std::uint64_t mix_modulus = table_.get(indexes_[params_.index_count - 1]);
    std::vector<Word> z = pipeline();
    const unsigned k = params_.word_bits;
    const unsigned rounds = params_.feistel_rounds;
    const std::uint64_t e2 = params_.mix_exponent;
    trace.feedback = feistel::mix(z[0], mix_modulus, w2_, k, rounds, e2);
    x0_ = trace.feedback;
    trace.output.reserve(z.size() - 1);
    for (std::size_t j = 1; j < z.size(); ++j)
        trace.output.push_back(feistel::mix(z[j], mix_modulus, w2_, k, rounds, e2));
    ++steps_;
    return trace;
}

Prng::StepTrace Prng::step_trace() { return step(); }

Word Prng::next() {
    if (pending_.empty()) {
        StepTrace t = step();
        pending_.insert(pending_.end(), t.output.begin(), t.output.end());
    }
    const Word w = pending_.front();
    pending_.pop_front();
    ++emitted_;
    return w;
}

std::vector<Word> Prng::generate(std::uint64_t n) {
    if (n < 1)
        raise(Errc::invalid_argument, "generate: need n >= 1");
    std::vector<Word> out;
    out.reserve(n);
    while (out.size() < n)
        out.push_back(next());
    return out;
}

} // namespace ef

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "bignum.hpp"
#include "feistel.hpp"
#include "prime_table.hpp"

namespace ef {

// Public parameters of the generator. q anchors the hard exponentiation
// y = g^x mod q; the k-bit moduli drawn from the prime table drive the
// chained small exponentiations; p/a drive the two skip counters.
struct PrngParams {
    BigUint q;                          // big safe prime
    BigUint g;                          // generator of Z_q*
    unsigned word_bits = 32;            // k: output word size, multiple of 8
    unsigned index_count = 6;           // s: hidden-prime indexes per round
    std::uint64_t refresh_period = 2048; // M_R: iterations between index refreshes
    unsigned feistel_rounds = 4;
    std::uint64_t chain_exponent = 17;  // e1
    std::uint64_t mix_exponent = 9;     // e2
    BigUint skip_modulus;               // p: safe prime of exactly 2k bits
    BigUint skip_generator;             // a: generator of Z_p*
    bool stretch = false;               // keep one extra word per iteration
    bool security_mode = false;         // enforce q >= 1024 bits, k >= 32, s >= 6

    // t: bits of y usable after the discarded top bit
    unsigned hard_bits() const;
    // t truncated to whole words (plus one word when stretched)
    unsigned kept_bits() const;
    unsigned words_per_step() const { return kept_bits() / word_bits - 1; }
    std::uint64_t bits_per_epoch() const {
        return static_cast<std::uint64_t>(word_bits) * words_per_step() * refresh_period;
    }

    void validate(const PrimeTable& table) const;
};

// Fills in g (square-root rule on q) and the skip pair (least safe prime of
// 2k bits plus its square-root-rule generator) when they are not set.
PrngParams finish_params(PrngParams params);

inline constexpr std::uint64_t kMaxSeed = 1ULL << 32; // seeds are 0 <= x <= 2^32

// Deterministic word stream. Single-owner: may move between threads, never
// shared. Independent instances over one immutable PrimeTable can run in
// parallel.
class Prng {
public:
    // Explicit index set (size s, each < table count), or bootstrap: start
    // from the all-zeros index set and run one refresh to derive them.
    Prng(PrngParams params, const PrimeTable& table, std::uint64_t seed,
         std::optional<std::vector<std::uint64_t>> indexes = std::nullopt);

    Word next();
    std::vector<Word> generate(std::uint64_t n);

    // Replace the index set by mixing the words of one internal iteration,
    // each reduced mod 2^r. Requires s <= words available per iteration.
    void refresh_indexes();

    // One outer iteration with its intermediates exposed; the feedback word
    // never reaches the output stream.
    struct StepTrace {
        std::vector<Word> output;
        Word feedback = 0;                  // mixed first word, becomes x0
        std::vector<std::uint64_t> indexes; // index set used this iteration
        bool refreshed = false;
        std::uint64_t step_index = 0;
    };
    StepTrace step_trace();

    const PrngParams& params() const { return params_; }
    const std::vector<std::uint64_t>& indexes() const { return indexes_; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t words_emitted() const { return emitted_; }
    const BigUint& skip_w1() const { return w1_.w; }
    const BigUint& skip_w2() const { return w2_.w; }
    std::uint64_t chain_value() const { return x0_; }

private:
    std::vector<Word> pipeline(); // one pass of the exponentiation chain -> z words
    StepTrace step();

    PrngParams params_;
    const PrimeTable& table_;
    SkipState w1_;
    SkipState w2_;
    std::uint64_t x0_ = 0;
    std::vector<std::uint64_t> indexes_;
    std::uint64_t steps_ = 0;
    std::uint64_t emitted_ = 0;
    std::deque<Word> pending_;
};

} // namespace ef

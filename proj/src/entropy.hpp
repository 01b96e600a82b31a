#pragma once

#include <cstdint>

#include "bignum.hpp"

namespace ef {

// Source of random words for prime searches. Instances are not thread-safe;
// use one per thread.
class EntropySource {
public:
    virtual ~EntropySource() = default;
    virtual std::uint64_t next_u64() = 0;

    // Uniform value with exactly `bits` bits (top bit forced to 1), bits >= 1.
    BigUint random_bits(unsigned bits);
    // Uniform value in [0, bound), bound >= 1, by rejection.
    std::uint64_t below(std::uint64_t bound);
};

// Reads the operating system's entropy pool.
class SystemEntropy final : public EntropySource {
public:
    std::uint64_t next_u64() override;
};

// splitmix64 stream; reproducible searches for tests and tools.
class SeededEntropy final : public EntropySource {
public:
    explicit SeededEntropy(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() override;

private:
    std::uint64_t state_;
};

} // namespace ef

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace ef::stats {

// Read-only view of a bit string stored MSB-first in bytes.
class BitSeq {
public:
    BitSeq(const std::uint8_t* data, std::uint64_t offset_bits, std::uint64_t nbits)
        : data_(data), offset_(offset_bits), nbits_(nbits) {}
    BitSeq(const std::uint8_t* data, std::uint64_t nbits) : BitSeq(data, 0, nbits) {}

    std::uint64_t size() const { return nbits_; }
    bool operator[](std::uint64_t i) const {
        const std::uint64_t bit = offset_ + i;
        return (data_[bit >> 3] >> (7 - (bit & 7))) & 1;
    }
    BitSeq slice(std::uint64_t from, std::uint64_t len) const {
        return BitSeq(data_, offset_ + from, len);
    }

private:
    const std::uint8_t* data_;
    std::uint64_t offset_;
    std::uint64_t nbits_;
};

// --- special functions (double precision) --------------------------------
// Regularized upper incomplete gamma Q(a, x); series / continued fraction.
double gamma_q(double a, double x);
// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_tail(double chi2, unsigned df);
// Kolmogorov limiting distribution Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);
// Anderson-Darling p-value (case 0, fully specified null) for statistic a2
// over n samples; Marsaglia & Marsaglia evaluation, ~1e-6 absolute accuracy.
double anderson_darling_p(double a2, std::uint64_t n);

// --- kernels ---------------------------------------------------------------
// Frequency: p = erfc(|#1 - #0| / sqrt(2n)); needs n >= 100.
double monobit(const BitSeq& bits);
// Runs count against its expectation; nullopt when the frequency
// prerequisite |pi - 1/2| >= 2/sqrt(n) fails (dependent test skipped).
std::optional<double> runs_test(const BitSeq& bits);
// A = sum b_i xor b_{i+d}; z = 2(A - (n-d)/2)/sqrt(n-d); p = erfc(|z|/sqrt 2).
double autocorrelation(const BitSeq& bits, std::uint64_t lag);
// Chi-square of non-overlapping block weights against Binomial(L, 1/2),
// low-probability weights pooled so every cell expects >= 5.
double hamming_weight_blocks(const BitSeq& bits, unsigned block_bits);
// Lag-1 correlation of consecutive block weights, z = rho * sqrt(B-1).
// Constant weights make the correlation undefined: reported as p = 0.
double hamming_correlation(const BitSeq& bits, unsigned block_bits);

// --- verdicts and meta-analysis -------------------------------------------
enum class Verdict { pass, suspicious, failure };
const char* to_string(Verdict v);

inline constexpr double kFailureEps = 1e-10;

// Outright failure when p sits in [0, 1e-10] or [1-1e-10, 1); a p-value of
// exactly 1.0 is the modal outcome of the discrete two-sided statistics and
// classifies as suspicious, not failure. Suspicious otherwise means p < alpha
// or p > 1-alpha.
Verdict classify(double p, double alpha);

struct RatioResult {
    double ratio = 0.0;
    bool passed = false;
};
// R = #{p >= alpha}/M, passed iff R > 1-alpha (strict).
RatioResult pass_ratio(const std::vector<double>& p_values, double alpha);

struct UniformityResult {
    double ks_p = 0.0;
    double ad_p = 0.0;
    double chi2_p = 0.0;
    bool accepted(double alpha) const {
        return ks_p >= alpha && ad_p >= alpha && chi2_p >= alpha;
    }
};
// KS, Anderson-Darling and 10-bin chi-square tests of p_values against
// Uniform(0, 1]; needs at least 10 samples.
UniformityResult uniformity_tests(std::vector<double> p_values);

// --- battery ----------------------------------------------------------------
struct BatteryConfig {
    std::uint32_t subsequences = 64;          // M
    double alpha = 0.001;                     // per-test significance
    double meta_alpha = 0.01;                 // uniformity acceptance level
    std::vector<std::uint64_t> lags = {1, 2, 4};
    std::vector<unsigned> block_sizes = {32, 256};
    std::uint64_t min_total_bits() const;
};

struct TestResult {
    std::string test_id;
    std::uint32_t subseq = 0;
    std::uint64_t n_bits = 0;
    double p_value = 0.0;
    Verdict verdict = Verdict::pass;
    bool skipped = false;
};

struct TestReport {
    struct Ratio {
        std::string test_id;
        double ratio = 0.0;
        bool passed = false;
    };
    struct Uniformity {
        std::string test_id;
        UniformityResult u;
        bool accepted = false;
    };

    std::vector<TestResult> results;
    std::vector<Ratio> ratios;
    std::vector<Uniformity> uniformity;
    double alpha = 0.001;
    double meta_alpha = 0.01;

    std::uint64_t executed() const; // results actually run (not skipped)
    std::uint64_t count(Verdict v) const;
    std::uint64_t skipped_count() const;

    // One tab-separated line per result, then #RATIO and #UNIF summaries.
    void serialize(std::ostream& out) const;
    std::string to_string() const;
    static TestReport parse(std::istream& in);
};

// Run every kernel over M non-overlapping subsequences of the stream.
TestReport run_battery(const BitSeq& stream, const BatteryConfig& config);

} // namespace ef::stats

#include "stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace ef::stats {
namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t count_ones(const BitSeq& b) {
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < b.size(); ++i)
        ones += b[i];
    return ones;
}

} // namespace

// ---- special functions ------------------------------------------------

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        raise(Errc::domain, "gamma_q: requires a > 0, x >= 0");
    if (x == 0.0)
        return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series, Q = 1 - P
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-17)
                break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    // Lentz continued fraction for Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-17)
            break;
    }
    return std::clamp(std::exp(-x + a * std::log(x) - lg) * h, 0.0, 1.0);
}

double chi2_tail(double chi2, unsigned df) {
    if (df == 0)
        raise(Errc::domain, "chi2_tail: df must be >= 1");
    return gamma_q(df / 2.0, chi2 / 2.0);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0)
        return 1.0;
    if (lambda < 1.18) {
        // theta-function form of the CDF, fast convergence for small lambda
        const double v = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
        const double cdf = std::sqrt(2.0 * M_PI) / lambda *
                           (v + std::pow(v, 9.0) + std::pow(v, 25.0) + std::pow(v, 49.0));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-18)
            break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Marsaglia & Marsaglia, "Evaluating the Anderson-Darling Distribution".
double ad_inf(double z) {
    if (z < 2.0)
        return std::exp(-1.2337141 / z) / std::sqrt(z) *
               (2.00012 +
                (0.247105 -
                 (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) *
                    z);
    return std::exp(
        -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z));
}

double ad_errfix(double n, double x) {
    if (x > 0.8)
        return (-130.2137 +
                (745.2337 - (1705.091 - (1950.646 - (1116.360 - 255.7844 * x) * x) * x) * x) * x) /
               n;
    const double c = 0.01265 + 0.1757 / n;
    if (x < c) {
        double t = x / c;
        t = std::sqrt(t) * (1.0 - t) * (49.0 * t - 102.0);
        return t * (0.0037 / (n * n) + 0.00078 / n + 0.00006) / n;
    }
    double t = (x - c) / (0.8 - c);
    t = -0.00022633 +
        (6.54034 - (14.6538 - (14.458 - (8.259 - 1.91864 * t) * t) * t) * t) * t;
    return t * (0.04213 + 0.01365 / n) / n;
}

} // namespace

double anderson_darling_p(double a2, std::uint64_t n) {
    if (n < 2)
        raise(Errc::domain, "anderson_darling_p: need n >= 2");
    if (a2 <= 0.0)
        return 1.0;
    const double x = ad_inf(a2);
    const double cdf = std::clamp(x + ad_errfix(static_cast<double>(n), x), 0.0, 1.0);
    return 1.0 - cdf;
}

// ---- kernels ------------------------------------------------------------

double monobit(const BitSeq& bits) {
    const std::uint64_t n = bits.size();
    if (n < 100)
        raise(Errc::insufficient_data, "monobit: needs at least 100 bits");
    const std::uint64_t ones = count_ones(bits);
    const double s = std::fabs(2.0 * static_cast<double>(ones) - static_cast<double>(n));
    return std::erfc(s / std::sqrt(2.0 * static_cast<double>(n)));
}

std::optional<double> runs_test(const BitSeq& bits) {
    const std::uint64_t n = bits.size();
    if (n < 100)
        raise(Errc::insufficient_data, "runs_test: needs at least 100 bits");
    const double pi = static_cast<double>(count_ones(bits)) / static_cast<double>(n);
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return std::nullopt; // frequency prerequisite failed
    std::uint64_t runs = 1;
    bool prev = bits[0];
    for (std::uint64_t i = 1; i < n; ++i) {
        const bool cur = bits[i];
        runs += (cur != prev);
        prev = cur;
    }
    const double nn = static_cast<double>(n);
    const double expected = 2.0 * nn * pi * (1.0 - pi);
    const double denom = 2.0 * std::sqrt(2.0 * nn) * pi * (1.0 - pi);
    return std::erfc(std::fabs(static_cast<double>(runs) - expected) / denom);
}

double autocorrelation(const BitSeq& bits, std::uint64_t lag) {
    const std::uint64_t n = bits.size();
    if (lag == 0 || lag >= n)
        raise(Errc::domain, "autocorrelation: lag must lie in [1, n)");
    if (n - lag < 100)
        raise(Errc::insufficient_data, "autocorrelation: needs n - lag >= 100");
    std::uint64_t agree = 0;
    const std::uint64_t span = n - lag;
    for (std::uint64_t i = 0; i < span; ++i)
        agree += bits[i] ^ bits[i + lag];
    const double m = static_cast<double>(span);
    const double z = 2.0 * (static_cast<double>(agree) - m / 2.0) / std::sqrt(m);
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double hamming_weight_blocks(const BitSeq& bits, unsigned block_bits) {
    if (block_bits == 0)
        raise(Errc::domain, "hamming_weight_blocks: block size must be >= 1");
    const std::uint64_t blocks = bits.size() / block_bits;
    if (blocks < 20)
        raise(Errc::domain, "hamming_weight_blocks: needs at least 20 full blocks");
    std::vector<std::uint64_t> weight_count(block_bits + 1, 0);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::uint64_t w = 0;
        for (unsigned i = 0; i < block_bits; ++i)
            w += bits[b * block_bits + i];
        ++weight_count[w];
    }
    // Binomial(L, 1/2) cell probabilities; pool cells walking w upward until
    // each pooled cell expects >= 5, trailing remainder folded into the last.
    const unsigned L = block_bits;
    const double lgL = std::lgamma(L + 1.0);
    auto expected_at = [&](unsigned w) {
        return blocks * std::exp(lgL - std::lgamma(w + 1.0) - std::lgamma(L - w + 1.0) -
                                 L * std::log(2.0));
    };
    std::vector<double> cell_expected;
    std::vector<std::uint64_t> cell_observed;
    double e_acc = 0.0;
    std::uint64_t o_acc = 0;
    for (unsigned w = 0; w <= L; ++w) {
        e_acc += expected_at(w);
        o_acc += weight_count[w];
        if (e_acc >= 5.0) {
            cell_expected.push_back(e_acc);
            cell_observed.push_back(o_acc);
            e_acc = 0.0;
            o_acc = 0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0) {
        cell_expected.back() += e_acc;
        cell_observed.back() += o_acc;
    }
    if (cell_expected.size() < 2)
        raise(Errc::domain, "hamming_weight_blocks: too few blocks for a chi-square cell split");
    double chi2 = 0.0;
    for (std::size_t i = 0; i < cell_expected.size(); ++i) {
        const double d = static_cast<double>(cell_observed[i]) - cell_expected[i];
        chi2 += d * d / cell_expected[i];
    }
    return chi2_tail(chi2, static_cast<unsigned>(cell_expected.size()) - 1);
}

double hamming_correlation(const BitSeq& bits, unsigned block_bits) {
    if (block_bits == 0)
        raise(Errc::domain, "hamming_correlation: block size must be >= 1");
    const std::uint64_t blocks = bits.size() / block_bits;
    if (blocks < 21)
        raise(Errc::domain, "hamming_correlation: needs at least 21 full blocks");
    std::vector<double> w(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::uint64_t ones = 0;
        for (unsigned i = 0; i < block_bits; ++i)
            ones += bits[b * block_bits + i];
        w[b] = static_cast<double>(ones);
    }
    double mean = 0.0;
    for (double v : w)
        mean += v;
    mean /= static_cast<double>(blocks);
    double num = 0.0, den = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const double d = w[b] - mean;
        den += d * d;
        if (b + 1 < blocks)
            num += d * (w[b + 1] - mean);
    }
    if (den == 0.0)
        return 0.0; // constant weights: correlation undefined, report failure
    const double rho = num / den;
    const double z = rho * std::sqrt(static_cast<double>(blocks - 1));
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

// ---- verdicts / meta ------------------------------------------------------

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::suspicious:
        return "suspicious";
    case Verdict::failure:
        return "failure";
    }
    return "?";
}

Verdict classify(double p, double alpha) {
    if ((p <= kFailureEps || p >= 1.0 - kFailureEps) && p != 1.0)
        return Verdict::failure;
    if (p < alpha || p > 1.0 - alpha)
        return Verdict::suspicious;
    return Verdict::pass;
}

RatioResult pass_ratio(const std::vector<double>& p_values, double alpha) {
    if (p_values.empty())
        raise(Errc::invalid_argument, "pass_ratio: need at least one p-value");
    std::uint64_t ok = 0;
    for (double p : p_values)
        ok += (p >= alpha);
    RatioResult r;
    r.ratio = static_cast<double>(ok) / static_cast<double>(p_values.size());
    r.passed = r.ratio > 1.0 - alpha;
    return r;
}

UniformityResult uniformity_tests(std::vector<double> p_values) {
    const std::size_t m = p_values.size();
    if (m < 10)
        raise(Errc::insufficient_data, "uniformity_tests: need at least 10 p-values");
    std::sort(p_values.begin(), p_values.end());
    UniformityResult out;
    // Kolmogorov-Smirnov with the Stephens small-sample correction
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = p_values[i];
        const double lo = static_cast<double>(i) / m;
        const double hi = static_cast<double>(i + 1) / m;
        d = std::max({d, std::fabs(f - lo), std::fabs(hi - f)});
    }
    const double sm = std::sqrt(static_cast<double>(m));
    out.ks_p = kolmogorov_q((sm + 0.12 + 0.11 / sm) * d);
    // Anderson-Darling (case 0)
    double a2 = -static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = std::clamp(p_values[i], 1e-300, 1.0 - 1e-16);
        const double v = std::clamp(p_values[m - 1 - i], 1e-300, 1.0 - 1e-16);
        a2 -= (2.0 * i + 1.0) / m * (std::log(u) + std::log1p(-v));
    }
    out.ad_p = anderson_darling_p(a2, m);
    // 10-bin chi-square against Uniform(0,1]
    std::array<std::uint64_t, 10> bins{};
    for (double p : p_values) {
        int b = static_cast<int>(std::ceil(p * 10.0)) - 1;
        bins[static_cast<std::size_t>(std::clamp(b, 0, 9))]++;
    }
    const double expect = m / 10.0;
    double chi2 = 0.0;
    for (std::uint64_t o : bins)
        chi2 += (o - expect) * (o - expect) / expect;
    out.chi2_p = chi2_tail(chi2, 9);
    return out;
}

// ---- battery ---------------------------------------------------------------

std::uint64_t BatteryConfig::min_total_bits() const {
    std::uint64_t per = 100;
    for (std::uint64_t lag : lags)
        per = std::max(per, lag + 100);
    for (unsigned L : block_sizes)
        per = std::max(per, static_cast<std::uint64_t>(L) * 21);
    return per * subsequences;
}

std::uint64_t TestReport::executed() const {
    std::uint64_t n = 0;
    for (const TestResult& r : results)
        n += !r.skipped;
    return n;
}

std::uint64_t TestReport::count(Verdict v) const {
    std::uint64_t n = 0;
    for (const TestResult& r : results)
        n += (!r.skipped && r.verdict == v);
    return n;
}

std::uint64_t TestReport::skipped_count() const {
    std::uint64_t n = 0;
    for (const TestResult& r : results)
        n += r.skipped;
    return n;
}

TestReport run_battery(const BitSeq& stream, const BatteryConfig& config) {
    if (config.subsequences < 1)
        raise(Errc::invalid_argument, "battery: need at least one subsequence");
    if (stream.size() < config.min_total_bits())
        raise(Errc::insufficient_data,
              "battery: stream of " + std::to_string(stream.size()) +
                  " bits is too short; need at least " +
                  std::to_string(config.min_total_bits()) + " bits for M = " +
                  std::to_string(config.subsequences) + " subsequences");
    const std::uint32_t m = config.subsequences;
    const std::uint64_t sub_bits = stream.size() / m;

    struct Kernel {
        std::string id;
        std::function<std::optional<double>(const BitSeq&)> fn;
    };
    std::vector<Kernel> kernels;
    kernels.push_back({"monobit", [](const BitSeq& b) { return monobit(b); }});
    kernels.push_back({"runs", [](const BitSeq& b) { return runs_test(b); }});
    for (std::uint64_t lag : config.lags)
        kernels.push_back({"autocorr_d" + std::to_string(lag),
                           [lag](const BitSeq& b) { return autocorrelation(b, lag); }});
    for (unsigned L : config.block_sizes)
        kernels.push_back({"hamming_weight_L" + std::to_string(L),
                           [L](const BitSeq& b) { return hamming_weight_blocks(b, L); }});
    for (unsigned L : config.block_sizes)
        kernels.push_back({"hamming_corr_L" + std::to_string(L),
                           [L](const BitSeq& b) { return hamming_correlation(b, L); }});

    TestReport report;
    report.alpha = config.alpha;
    report.meta_alpha = config.meta_alpha;
    for (const Kernel& kernel : kernels) {
        std::vector<double> ps;
        ps.reserve(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            const BitSeq sub = stream.slice(static_cast<std::uint64_t>(i) * sub_bits, sub_bits);
            TestResult r;
            r.test_id = kernel.id;
            r.subseq = i;
            r.n_bits = sub_bits;
            const std::optional<double> p = kernel.fn(sub);
            if (!p) {
                r.skipped = true;
                r.p_value = 0.0;
            } else {
                r.p_value = *p;
                r.verdict = classify(*p, config.alpha);
                ps.push_back(*p);
            }
            report.results.push_back(std::move(r));
        }
        if (!ps.empty()) {
            const RatioResult rr = pass_ratio(ps, config.alpha);
            report.ratios.push_back({kernel.id, rr.ratio, rr.passed});
            if (ps.size() >= 10) {
                const UniformityResult u = uniformity_tests(ps);
                report.uniformity.push_back({kernel.id, u, u.accepted(config.meta_alpha)});
            }
        }
    }
    return report;
}

void TestReport::serialize(std::ostream& out) const {
    for (const TestResult& r : results) {
        out << r.test_id << '\t' << r.subseq << '\t' << r.n_bits << '\t'
            << fmt17(r.p_value) << '\t'
            << (r.skipped ? "skipped" : stats::to_string(r.verdict)) << '\n';
    }
    for (const Ratio& r : ratios)
        out << "#RATIO\t" << r.test_id << '\t' << fmt17(r.ratio) << '\t'
            << (r.passed ? "passed" : "failed") << '\n';
    for (const Uniformity& u : uniformity)
        out << "#UNIF\t" << u.test_id << '\t' << fmt17(u.u.ks_p) << '\t' << fmt17(u.u.ad_p)
            << '\t' << fmt17(u.u.chi2_p) << '\t' << (u.accepted ? "accepted" : "rejected")
            << '\n';
}

std::string TestReport::to_string() const {
    std::ostringstream os;
    serialize(os);
    return os.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            raise(Errc::parse, "report: bad number '" + s + "'");
        return v;
    } catch (const std::exception&) {
        raise(Errc::parse, "report: bad number '" + s + "'");
    }
}

} // namespace

TestReport TestReport::parse(std::istream& in) {
    TestReport report;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> f = split_tabs(line);
        if (f[0] == "#RATIO") {
            if (f.size() != 4)
                raise(Errc::parse, "report: malformed #RATIO line");
            report.ratios.push_back({f[1], parse_double(f[2]), f[3] == "passed"});
        } else if (f[0] == "#UNIF") {
            if (f.size() != 6)
                raise(Errc::parse, "report: malformed #UNIF line");
            Uniformity u;
            u.test_id = f[1];
            u.u.ks_p = parse_double(f[2]);
            u.u.ad_p = parse_double(f[3]);
            u.u.chi2_p = parse_double(f[4]);
            u.accepted = f[5] == "accepted";
            report.uniformity.push_back(std::move(u));
        } else {
            if (f.size() != 5)
                raise(Errc::parse, "report: malformed result line");
            TestResult r;
            r.test_id = f[0];
            try {
                r.subseq = static_cast<std::uint32_t>(std::stoul(f[1]));
                r.n_bits = std::stoull(f[2]);
            } catch (const std::exception&) {
                raise(Errc::parse, "report: malformed result line");
            }
            r.p_value = parse_double(f[3]);
            if (f[4] == "skipped") {
                r.skipped = true;
            } else if (f[4] == "pass") {
                r.verdict = Verdict::pass;
            } else if (f[4] == "suspicious") {
                r.verdict = Verdict::suspicious;
            } else if (f[4] == "failure") {
                r.verdict = Verdict::failure;
            } else {
                raise(Errc::parse, "report: unknown verdict '" + f[4] + "'");
            }
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

} // namespace ef::stats

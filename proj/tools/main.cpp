// Command-line front end. Links only the public C interface of the shared
// library; subcommands: primes, gen, test, bench, selftest.
//
// Exit codes: 0 success, 1 test or known-answer failure, 2 usage/config error.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expofeistel.h"

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define EF_CLI_HAVE_TSC 1
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;

struct ConfigHandle {
    ef_config* c = ef_config_new();
    ~ConfigHandle() { ef_config_free(c); }
};

struct TableHandle {
    ef_table* t = nullptr;
    ~TableHandle() { ef_table_free(t); }
};

struct PrngHandle {
    ef_prng* p = nullptr;
    ~PrngHandle() { ef_prng_free(p); }
};

struct ReportHandle {
    ef_report* r = nullptr;
    ~ReportHandle() { ef_report_free(r); }
};

int fail(ef_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << ef_last_error() << "\n";
    switch (status) {
    case EF_ERR_ARGUMENT:
    case EF_ERR_CONFIG:
    case EF_ERR_PARSE:
    case EF_ERR_DATA:
    case EF_ERR_DOMAIN:
        return kExitUsage;
    default:
        return kExitTestFailure;
    }
}

// flag overrides applied on top of an optional --config file
struct GenOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;

    int apply(ef_config* cfg) const {
        if (!config_path.empty()) {
            const ef_status st = ef_config_load_file(cfg, config_path.c_str());
            if (st != EF_OK)
                return fail(st, "loading config '" + config_path + "'");
        }
        for (const auto& [key, value] : overrides) {
            const ef_status st = ef_config_set(cfg, key.c_str(), value.c_str());
            if (st != EF_OK)
                return fail(st, "setting " + key);
        }
        return kExitOk;
    }
};

void add_gen_flags(CLI::App* cmd, GenOptions& opts) {
    cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
    static const std::vector<std::pair<std::string, std::string>> flags = {
        {"--qbits", "qbits"},   {"--q", "q"},             {"--k", "k"},
        {"--s", "s"},           {"--mr", "mr"},           {"--nrounds", "nrounds"},
        {"--seed", "seed"},     {"--indexes", "indexes"}, {"--table", "table"},
        {"--n", "n"},           {"--format", "format"},   {"--out", "out"},
    };
    for (const auto& [flag, key] : flags) {
        const std::string k = key;
        cmd->add_option_function<std::string>(
            flag, [&opts, k](const std::string& v) { opts.overrides[k] = v; },
            "sets config key '" + k + "'");
    }
    cmd->add_flag_callback("--security-mode",
                           [&opts] { opts.overrides["security_mode"] = "true"; },
                           "enforce q >= 1024 bits, k >= 32, s >= 6");
    cmd->add_flag_callback("--stretch", [&opts] { opts.overrides["stretch"] = "true"; },
                           "keep one extra word per iteration");
}

std::string config_value(const ef_config* cfg, const char* key) {
    char buf[4096];
    if (ef_config_get(cfg, key, buf, sizeof buf) != EF_OK)
        return "";
    return buf;
}

int make_prng(const ef_config* cfg, TableHandle& table, PrngHandle& prng) {
    const std::string table_path = config_value(cfg, "table");
    ef_status st;
    if (!table_path.empty()) {
        st = ef_table_load_file(table_path.c_str(), &table.t);
        if (st != EF_OK)
            return fail(st, "loading table '" + table_path + "'");
    } else {
        std::cerr << "error: no prime table; pass --table FILE (build one with "
                     "'expofeistel primes')\n";
        return kExitUsage;
    }
    st = ef_prng_create(cfg, table.t, &prng.p);
    if (st != EF_OK)
        return fail(st, "creating generator");
    return kExitOk;
}

int write_words(ef_prng* prng, std::uint64_t n, const std::string& format,
                std::ostream& out) {
    const unsigned word_bits = ef_prng_word_bits(prng);
    const unsigned bytes_per_word = word_bits / 8;
    if (format == "hex") {
        const int digits = static_cast<int>(word_bits / 4);
        char line[32];
        for (std::uint64_t i = 0; i < n; ++i) {
            std::uint64_t w = 0;
            const ef_status st = ef_prng_next_word(prng, &w);
            if (st != EF_OK)
                return fail(st, "generating");
            std::snprintf(line, sizeof line, "%0*" PRIx64 "\n", digits, w);
            out << line;
        }
        out.flush();
        return out ? kExitOk : kExitTestFailure;
    }
    const int big_endian = (format != "raw-le");
    std::vector<std::uint8_t> buf;
    constexpr std::uint64_t chunk_words = 8192;
    buf.resize(chunk_words * bytes_per_word);
    std::uint64_t remaining = n;
    while (remaining > 0) {
        const std::uint64_t batch = remaining < chunk_words ? remaining : chunk_words;
        const ef_status st =
            ef_prng_generate(prng, batch, big_endian, buf.data(), buf.size());
        if (st != EF_OK)
            return fail(st, "generating");
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(batch * bytes_per_word));
        remaining -= batch;
    }
    out.flush();
    if (!out) {
        std::cerr << "error: write failed\n";
        return kExitTestFailure;
    }
    return kExitOk;
}

// ---- primes -----------------------------------------------------------------

int cmd_primes(unsigned k, const std::string& count_text, const std::string& out_path) {
    if (k % 8 != 0 || k < 8 || k > 64) {
        std::cerr << "error: --k must be a multiple of 8 in [8, 64]\n";
        return kExitUsage;
    }
    std::uint64_t count = 0;
    if (count_text != "all") {
        try {
            std::size_t used = 0;
            count = std::stoull(count_text, &used);
            if (used != count_text.size() || count < 2)
                throw std::invalid_argument(count_text);
        } catch (const std::exception&) {
            std::cerr << "error: --count expects an integer >= 2 or 'all'\n";
            return kExitUsage;
        }
    }
    TableHandle table;
    ef_status st = ef_table_build(k, count, &table.t);
    if (st != EF_OK)
        return fail(st, "building table");
    st = ef_table_save_file(table.t, out_path.c_str());
    if (st != EF_OK)
        return fail(st, "writing '" + out_path + "'");
    std::cout << "wrote " << ef_table_count(table.t) << " safe primes of " << k
              << " bits to " << out_path
              << " (index exponent r = " << ef_table_index_exponent(table.t)
              << ", log2 keyspace at s=6: " << ef_table_log2_keyspace(table.t, 6)
              << ")\n";
    return kExitOk;
}

// ---- gen ----------------------------------------------------------------------

int cmd_gen(const GenOptions& opts) {
    ConfigHandle cfg;
    if (const int rc = opts.apply(cfg.c); rc != kExitOk)
        return rc;
    const std::string n_text = config_value(cfg.c, "n");
    if (n_text.empty()) {
        std::cerr << "error: word count required (--n)\n";
        return kExitUsage;
    }
    std::uint64_t n = 0;
    try {
        n = std::stoull(n_text);
    } catch (const std::exception&) {
        std::cerr << "error: field 'n': not an integer: '" << n_text << "'\n";
        return kExitUsage;
    }
    std::string format = config_value(cfg.c, "format");
    if (format.empty())
        format = "raw-be";
    if (format != "raw-be" && format != "raw-le" && format != "hex") {
        std::cerr << "error: field 'format': expected raw-be, raw-le or hex\n";
        return kExitUsage;
    }
    TableHandle table;
    PrngHandle prng;
    if (const int rc = make_prng(cfg.c, table, prng); rc != kExitOk)
        return rc;
    const std::string out_path = config_value(cfg.c, "out");
    if (out_path.empty() || out_path == "-")
        return write_words(prng.p, n, format, std::cout);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
    }
    return write_words(prng.p, n, format, out);
}

// ---- test ---------------------------------------------------------------------

struct KernelTally {
    std::uint64_t runs = 0, pass = 0, weak = 0, fail = 0, skip = 0;
};

int cmd_test(const GenOptions& opts, const std::string& in_path,
             const std::string& report_path) {
    ConfigHandle cfg;
    if (const int rc = opts.apply(cfg.c); rc != kExitOk)
        return rc;

    std::vector<std::uint8_t> data;
    if (!in_path.empty()) {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open '" << in_path << "'\n";
            return kExitUsage;
        }
        data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        const std::string n_text = config_value(cfg.c, "n");
        if (n_text.empty()) {
            std::cerr << "error: need --in FILE or a generation config with --n\n";
            return kExitUsage;
        }
        TableHandle table;
        PrngHandle prng;
        if (const int rc = make_prng(cfg.c, table, prng); rc != kExitOk)
            return rc;
        const std::uint64_t n = std::stoull(n_text);
        const unsigned bytes_per_word = ef_prng_word_bits(prng.p) / 8;
        data.resize(n * bytes_per_word);
        const ef_status st = ef_prng_generate(prng.p, n, 1, data.data(), data.size());
        if (st != EF_OK)
            return fail(st, "generating");
    }

    std::uint64_t nbits = static_cast<std::uint64_t>(data.size()) * 8;
    const std::string bits_text = config_value(cfg.c, "bits");
    if (!bits_text.empty()) {
        const std::uint64_t limit = std::stoull(bits_text);
        if (limit > nbits) {
            std::cerr << "error: field 'bits': stream has only " << nbits << " bits\n";
            return kExitUsage;
        }
        nbits = limit;
    }

    ReportHandle report;
    ef_status st = ef_battery_run(data.data(), nbits, cfg.c, &report.r);
    if (st != EF_OK)
        return fail(st, "running battery");

    char* text = nullptr;
    st = ef_report_render(report.r, &text);
    if (st != EF_OK)
        return fail(st, "rendering report");
    const std::string rendered = text;
    ef_string_free(text);

    if (!report_path.empty()) {
        std::ofstream rf(report_path, std::ios::binary);
        rf << rendered;
        if (!rf) {
            std::cerr << "error: cannot write '" << report_path << "'\n";
            return kExitUsage;
        }
    }

    // per-kernel verdict tallies out of the rendered result lines
    std::map<std::string, KernelTally> tally;
    std::istringstream lines(rendered);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string id, subseq, bits, p, verdict;
        std::getline(fields, id, '\t');
        std::getline(fields, subseq, '\t');
        std::getline(fields, bits, '\t');
        std::getline(fields, p, '\t');
        std::getline(fields, verdict, '\t');
        KernelTally& t = tally[id];
        if (verdict == "skipped") {
            ++t.skip;
            continue;
        }
        ++t.runs;
        if (verdict == "pass")
            ++t.pass;
        else if (verdict == "suspicious")
            ++t.weak;
        else
            ++t.fail;
    }
    ef_report_totals totals{};
    ef_report_totals_get(report.r, &totals);

    std::printf("%-22s %6s %6s %6s %6s %6s\n", "test", "runs", "pass", "weak", "fail",
                "skip");
    for (const auto& [id, t] : tally)
        std::printf("%-22s %6" PRIu64 " %6" PRIu64 " %6" PRIu64 " %6" PRIu64 " %6" PRIu64
                    "\n",
                    id.c_str(), t.runs, t.pass, t.weak, t.fail, t.skip);
    std::printf("%-22s %6" PRIu64 " %6" PRIu64 " %6" PRIu64 " %6" PRIu64 " %6" PRIu64
                "\n",
                "TOTAL", totals.executed, totals.passed, totals.suspicious,
                totals.failures, totals.skipped);
    std::printf("pass ratios: %s, p-value uniformity: %s\n",
                totals.ratios_passed ? "ok" : "BELOW THRESHOLD",
                totals.uniformity_passed ? "accepted" : "REJECTED");
    return totals.failures == 0 ? kExitOk : kExitTestFailure;
}

// ---- bench --------------------------------------------------------------------

int cmd_bench(const std::vector<unsigned>& sizes, std::uint64_t words, unsigned k) {
    if (sizes.empty() || words == 0) {
        std::cerr << "error: need at least one q size and a nonzero word count\n";
        return kExitUsage;
    }
    TableHandle table;
    ef_status st = ef_table_build(k, 16, &table.t);
    if (st != EF_OK)
        return fail(st, "building bench table");

    std::printf("%8s %12s %12s %12s %12s\n", "qbits", "words/s", "MiB/s", "ns/byte",
                "cycles/byte");
    std::vector<std::string> machine;
    for (unsigned qbits : sizes) {
        ConfigHandle cfg;
        ef_config_set(cfg.c, "qbits", std::to_string(qbits).c_str());
        ef_config_set(cfg.c, "k", std::to_string(k).c_str());
        ef_config_set(cfg.c, "seed", "1");
        ef_config_set(cfg.c, "indexes", "1,2,3,4,5,6");
        PrngHandle prng;
        st = ef_prng_create(cfg.c, table.t, &prng.p);
        if (st != EF_OK)
            return fail(st, "creating generator for qbits=" + std::to_string(qbits));
        const unsigned bytes_per_word = k / 8;
        std::vector<std::uint8_t> buf(words * bytes_per_word);
        // warm-up pass keeps page faults and lazy init out of the measurement
        st = ef_prng_generate(prng.p, words / 8 + 1, 1, buf.data(), buf.size());
        if (st != EF_OK)
            return fail(st, "benchmarking");
        const auto t0 = std::chrono::steady_clock::now();
#ifdef EF_CLI_HAVE_TSC
        const std::uint64_t c0 = __rdtsc();
#endif
        st = ef_prng_generate(prng.p, words, 1, buf.data(), buf.size());
#ifdef EF_CLI_HAVE_TSC
        const std::uint64_t c1 = __rdtsc();
#endif
        const auto t1 = std::chrono::steady_clock::now();
        if (st != EF_OK)
            return fail(st, "benchmarking");
        const double ns = static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        const double bytes = static_cast<double>(words) * bytes_per_word;
        const double ns_per_byte = ns / bytes;
        double cycles_per_byte = -1.0;
#ifdef EF_CLI_HAVE_TSC
        cycles_per_byte = static_cast<double>(c1 - c0) / bytes;
#endif
        std::printf("%8u %12.0f %12.2f %12.2f ", qbits, words / (ns / 1e9),
                    bytes / (ns / 1e9) / (1024.0 * 1024.0), ns_per_byte);
        if (cycles_per_byte >= 0)
            std::printf("%12.1f\n", cycles_per_byte);
        else
            std::printf("%12s\n", "n/a");
        std::ostringstream m;
        m << "bench\t" << qbits << '\t' << static_cast<std::uint64_t>(bytes) << '\t'
          << ns_per_byte << '\t' << cycles_per_byte;
        machine.push_back(m.str());
    }
    std::printf("# machine-readable: bench\tqbits\tbytes\tns_per_byte\tcycles_per_byte\n");
    for (const std::string& m : machine)
        std::printf("%s\n", m.c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"expofeistel: modular-exponentiation generator with Feistel-like "
                 "output mixing"};
    app.require_subcommand(1);

    auto* primes = app.add_subcommand("primes", "build a safe-prime table file");
    unsigned primes_k = 32;
    std::string primes_count = "256";
    std::string primes_out;
    primes->add_option("--k", primes_k, "bit size of table entries")->required();
    primes->add_option("--count", primes_count, "number of primes, or 'all'");
    primes->add_option("--out", primes_out, "output file")->required();

    auto* gen = app.add_subcommand("gen", "generate random words");
    GenOptions gen_opts;
    add_gen_flags(gen, gen_opts);

    auto* test = app.add_subcommand("test", "run the statistical battery");
    GenOptions test_opts;
    std::string test_in, test_report;
    add_gen_flags(test, test_opts);
    test->add_option("--in", test_in, "raw input stream (bytes, MSB-first)");
    test->add_option("--report", test_report, "write the full report here");
    test->add_option_function<std::string>(
        "--m", [&test_opts](const std::string& v) { test_opts.overrides["battery_m"] = v; },
        "number of subsequences");
    test->add_option_function<std::string>(
        "--alpha", [&test_opts](const std::string& v) { test_opts.overrides["alpha"] = v; },
        "per-test significance level");
    test->add_option_function<std::string>(
        "--meta-alpha",
        [&test_opts](const std::string& v) { test_opts.overrides["meta_alpha"] = v; },
        "uniformity acceptance level");
    test->add_option_function<std::string>(
        "--lags", [&test_opts](const std::string& v) { test_opts.overrides["lags"] = v; },
        "autocorrelation lags, comma separated");
    test->add_option_function<std::string>(
        "--blocks",
        [&test_opts](const std::string& v) { test_opts.overrides["block_sizes"] = v; },
        "Hamming block sizes, comma separated");
    test->add_option_function<std::string>(
        "--bits", [&test_opts](const std::string& v) { test_opts.overrides["bits"] = v; },
        "use only the first N bits");

    auto* bench = app.add_subcommand("bench", "throughput against q size");
    std::vector<unsigned> bench_sizes = {256, 512, 1024, 2048};
    std::uint64_t bench_words = 1 << 15;
    unsigned bench_k = 32;
    bench->add_option("--sizes", bench_sizes, "q bit sizes to measure");
    bench->add_option("--words", bench_words, "words generated per size");
    bench->add_option("--k", bench_k, "word size in bits");

    auto* selftest = app.add_subcommand("selftest", "run embedded known-answer checks");
    bool selftest_quiet = false;
    selftest->add_flag("--quiet", selftest_quiet, "suppress per-check output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return kExitOk;
        }
        app.exit(e);
        return kExitUsage;
    }

    if (primes->parsed())
        return cmd_primes(primes_k, primes_count, primes_out);
    if (gen->parsed())
        return cmd_gen(gen_opts);
    if (test->parsed())
        return cmd_test(test_opts, test_in, test_report);
    if (bench->parsed())
        return cmd_bench(bench_sizes, bench_words, bench_k);
    if (selftest->parsed())
        return ef_selftest(selftest_quiet ? 0 : 1) == 0 ? kExitOk : kExitTestFailure;
    return kExitUsage;
}

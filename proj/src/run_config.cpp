#include "run_config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "builtin_primes.hpp"
#include "modmath.hpp"

namespace ef {
namespace {

constexpr std::array kKnownKeys = {
    // generator
    "q", "qbits", "g", "k", "s", "mr", "nrounds", "e1", "e2", "skip_p", "skip_a",
    "stretch", "security_mode", "seed", "indexes", "table", "n", "format", "out",
    // battery
    "battery_m", "alpha", "meta_alpha", "lags", "block_sizes", "bits"};

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos)
        return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int base = value.rfind("0x", 0) == 0 || value.rfind("0X", 0) == 0 ? 16 : 10;
        const std::uint64_t v = std::stoull(value, &used, base);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        raise(Errc::config, "config: field '" + key + "': not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on")
        return true;
    if (value == "0" || value == "false" || value == "no" || value == "off")
        return false;
    raise(Errc::config, "config: field '" + key + "': not a boolean: '" + value + "'");
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        raise(Errc::config, "config: field '" + key + "': not a number: '" + value + "'");
    }
}

std::vector<std::uint64_t> parse_list(const std::string& key, const std::string& value) {
    std::vector<std::uint64_t> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ','))
        out.push_back(parse_u64(key, trim(item)));
    if (out.empty())
        raise(Errc::config, "config: field '" + key + "': empty list");
    return out;
}

} // namespace

WordFormat parse_format(const std::string& name) {
    if (name == "raw-be")
        return WordFormat::raw_be;
    if (name == "raw-le")
        return WordFormat::raw_le;
    if (name == "hex")
        return WordFormat::hex;
    raise(Errc::config, "config: field 'format': expected raw-be, raw-le or hex, got '" +
                            name + "'");
}

const char* to_string(WordFormat f) {
    switch (f) {
    case WordFormat::raw_be:
        return "raw-be";
    case WordFormat::raw_le:
        return "raw-le";
    case WordFormat::hex:
        return "hex";
    }
    return "?";
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
        raise(Errc::config, "config: unknown key '" + key + "'");
    kv_[key] = value;
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return std::nullopt;
    return it->second;
}

RunConfig RunConfig::load(std::istream& in) {
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            raise(Errc::config,
                  "config line " + std::to_string(lineno) + ": expected 'key = value'");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        raise(Errc::io, "config: cannot open '" + path + "'");
    return load(f);
}

void RunConfig::save(std::ostream& out) const {
    for (const auto& [key, value] : kv_)
        out << key << " = " << value << '\n';
}

void RunConfig::save_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f)
        raise(Errc::io, "config: cannot open '" + path + "' for writing");
    save(f);
    if (!f)
        raise(Errc::io, "config: write to '" + path + "' failed");
}

std::string RunConfig::to_string() const {
    std::ostringstream os;
    save(os);
    return os.str();
}

PrngParams RunConfig::make_params() const {
    PrngParams p;
    if (const auto k = get("k"))
        p.word_bits = static_cast<unsigned>(parse_u64("k", *k));
    if (const auto s = get("s"))
        p.index_count = static_cast<unsigned>(parse_u64("s", *s));
    if (const auto mr = get("mr"))
        p.refresh_period = parse_u64("mr", *mr);
    if (const auto r = get("nrounds"))
        p.feistel_rounds = static_cast<unsigned>(parse_u64("nrounds", *r));
    if (const auto e = get("e1"))
        p.chain_exponent = parse_u64("e1", *e);
    if (const auto e = get("e2"))
        p.mix_exponent = parse_u64("e2", *e);
    if (const auto v = get("stretch"))
        p.stretch = parse_bool("stretch", *v);
    if (const auto v = get("security_mode"))
        p.security_mode = parse_bool("security_mode", *v);
    if (const auto q = get("q")) {
        try {
            p.q = parse_biguint(*q);
        } catch (const Error&) {
            raise(Errc::config, "config: field 'q': not an integer: '" + *q + "'");
        }
    } else {
        const unsigned qbits =
            get("qbits") ? static_cast<unsigned>(parse_u64("qbits", *get("qbits"))) : 1024;
        if (qbits < 8 || qbits > 8192)
            raise(Errc::config, "config: field 'qbits': must lie in [8, 8192]");
        p.q = builtin_safe_prime_or_search(qbits);
    }
    if (const auto g = get("g"))
        p.g = parse_biguint(*g);
    if (const auto v = get("skip_p"))
        p.skip_modulus = parse_biguint(*v);
    if (const auto v = get("skip_a"))
        p.skip_generator = parse_biguint(*v);
    return finish_params(std::move(p));
}

std::uint64_t RunConfig::seed() const {
    const auto v = get("seed");
    if (!v)
        return 0;
    const std::uint64_t s = parse_u64("seed", *v);
    if (s > kMaxSeed)
        raise(Errc::config, "config: field 'seed': out of range [0, 2^32]");
    return s;
}

std::optional<std::vector<std::uint64_t>> RunConfig::indexes() const {
    const auto v = get("indexes");
    if (!v)
        return std::nullopt;
    return parse_list("indexes", *v);
}

std::optional<std::uint64_t> RunConfig::word_count() const {
    const auto v = get("n");
    if (!v)
        return std::nullopt;
    return parse_u64("n", *v);
}

WordFormat RunConfig::format() const {
    const auto v = get("format");
    return v ? parse_format(*v) : WordFormat::raw_be;
}

std::optional<std::string> RunConfig::table_path() const { return get("table"); }
std::optional<std::string> RunConfig::out_path() const { return get("out"); }

stats::BatteryConfig RunConfig::battery() const {
    stats::BatteryConfig b;
    if (const auto v = get("battery_m"))
        b.subsequences = static_cast<std::uint32_t>(parse_u64("battery_m", *v));
    if (const auto v = get("alpha"))
        b.alpha = parse_real("alpha", *v);
    if (const auto v = get("meta_alpha"))
        b.meta_alpha = parse_real("meta_alpha", *v);
    if (const auto v = get("lags"))
        b.lags = parse_list("lags", *v);
    if (const auto v = get("block_sizes")) {
        b.block_sizes.clear();
        for (std::uint64_t L : parse_list("block_sizes", *v))
            b.block_sizes.push_back(static_cast<unsigned>(L));
    }
    if (b.alpha <= 0.0 || b.alpha >= 0.5)
        raise(Errc::config, "config: field 'alpha': must lie in (0, 0.5)");
    if (b.meta_alpha <= 0.0 || b.meta_alpha >= 0.5)
        raise(Errc::config, "config: field 'meta_alpha': must lie in (0, 0.5)");
    return b;
}

std::optional<std::uint64_t> RunConfig::bit_limit() const {
    const auto v = get("bits");
    if (!v)
        return std::nullopt;
    return parse_u64("bits", *v);
}

} // namespace ef

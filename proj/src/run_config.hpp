#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prng.hpp"
#include "stats.hpp"

namespace ef {

enum class WordFormat { raw_be, raw_le, hex };
WordFormat parse_format(const std::string& name);
const char* to_string(WordFormat f);

// Flat `key = value` configuration, `#` starts a comment. Unknown keys are
// rejected by name so typos surface immediately. The same object carries
// generator and battery settings; it round-trips through its file form.
class RunConfig {
public:
    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    static RunConfig load(std::istream& in);
    static RunConfig load_file(const std::string& path);
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    std::string to_string() const;

    // --- generator settings -------------------------------------------
    // q: explicit prime (decimal or 0x hex) wins over qbits; qbits resolves
    // to the least safe prime of that size (builtin table when available).
    PrngParams make_params() const;
    std::uint64_t seed() const;                                   // default 0
    std::optional<std::vector<std::uint64_t>> indexes() const;    // explicit list
    std::optional<std::uint64_t> word_count() const;              // n
    WordFormat format() const;                                    // default raw-be
    std::optional<std::string> table_path() const;
    std::optional<std::string> out_path() const;

    // --- battery settings ----------------------------------------------
    stats::BatteryConfig battery() const;
    std::optional<std::uint64_t> bit_limit() const;

    bool operator==(const RunConfig&) const = default;

private:
    std::map<std::string, std::string> kv_;
};

} // namespace ef

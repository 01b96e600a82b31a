#include "prime_table.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "modmath.hpp"

namespace ef {
namespace {

bool parse_u64(const std::string& s, std::uint64_t& out) {
    if (s.empty() || s.size() > 20)
        return false;
    out = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            return false;
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (out > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
            return false;
        out = out * 10 + digit;
    }
    return true;
}

unsigned u64_bits(std::uint64_t v) { return v == 0 ? 0 : 64 - __builtin_clzll(v); }

} // namespace

PrimeTable::PrimeTable(unsigned bits, std::vector<std::uint64_t> entries)
    : bits_(bits), entries_(std::move(entries)) {
    validate();
}

void PrimeTable::validate() const {
    if (bits_ < 3 || bits_ > 64)
        raise(Errc::config, "prime table: bit size must be in [3, 64]");
    if (entries_.size() < 2)
        raise(Errc::config, "prime table: needs at least 2 entries");
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const std::uint64_t p = entries_[i];
        // entry i sits on line i+2 of the on-disk form (header is line 1)
        const std::string where = "prime table line " + std::to_string(i + 2);
        if (u64_bits(p) != bits_)
            raise(Errc::integrity, where + ": " + std::to_string(p) + " is not a " +
                                       std::to_string(bits_) + "-bit value");
        if (p <= prev)
            raise(Errc::integrity, where + ": entries must be strictly ascending");
        if (!modmath::is_safe_prime(BigUint(p)))
            raise(Errc::integrity, where + ": " + std::to_string(p) + " is not a safe prime");
        prev = p;
    }
}

PrimeTable PrimeTable::build(unsigned bits, std::uint64_t count) {
    if (bits < 3 || bits > 64)
        raise(Errc::config, "prime table: bit size must be in [3, 64]");
    if (count == 0 && bits > 24)
        raise(Errc::config, "prime table: full enumeration supported only up to 24 bits");
    std::vector<std::uint64_t> found;
    const std::uint64_t lo = 1ULL << (bits - 1);
    const std::uint64_t hi = (bits == 64) ? UINT64_MAX : (1ULL << bits) - 1;
    for (std::uint64_t c = lo | 1;; c += 2) {
        if (modmath::is_safe_prime(BigUint(c))) {
            found.push_back(c);
            if (count != 0 && found.size() == count)
                break;
        }
        if (c >= hi - 1)
            break;
    }
    if (count != 0 && found.size() < count)
        raise(Errc::exhausted, "prime table: range of " + std::to_string(bits) +
                                   "-bit integers holds only " + std::to_string(found.size()) +
                                   " safe primes (requested " + std::to_string(count) + ")");
    return PrimeTable(bits, std::move(found));
}

unsigned PrimeTable::index_exponent() const {
    unsigned r = 0;
    while ((1ULL << (r + 1)) <= entries_.size())
        ++r;
    return r;
}

unsigned PrimeTable::log2_keyspace(unsigned index_count) const {
    return bits_ + index_count * index_exponent();
}

std::uint64_t PrimeTable::get(std::uint64_t index) const {
    if (index >= entries_.size())
        raise(Errc::index_range, "prime table: index " + std::to_string(index) +
                                     " out of range (count " +
                                     std::to_string(entries_.size()) + ")");
    return entries_[index];
}

void PrimeTable::save(std::ostream& out) const {
    out << "SAFEPRIMES v1 k=" << bits_ << " count=" << entries_.size() << '\n';
    for (std::uint64_t p : entries_)
        out << p << '\n';
    if (!out)
        raise(Errc::io, "prime table: write failed");
}

void PrimeTable::save_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        raise(Errc::io, "prime table: cannot open '" + path + "' for writing");
    save(f);
    f.flush();
    if (!f)
        raise(Errc::io, "prime table: write to '" + path + "' failed");
}

PrimeTable PrimeTable::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        raise(Errc::parse, "prime table: missing header line");
    unsigned bits = 0;
    std::uint64_t count = 0;
    {
        std::istringstream hs(header);
        std::string magic, version, kfield, cfield;
        hs >> magic >> version >> kfield >> cfield;
        std::string rest;
        if (magic != "SAFEPRIMES" || version != "v1" || kfield.rfind("k=", 0) != 0 ||
            cfield.rfind("count=", 0) != 0 || (hs >> rest))
            raise(Errc::parse, "prime table: malformed header '" + header + "'");
        std::uint64_t kval = 0;
        if (!parse_u64(kfield.substr(2), kval) || !parse_u64(cfield.substr(6), count))
            raise(Errc::parse, "prime table: malformed header '" + header + "'");
        if (kval < 3 || kval > 64)
            raise(Errc::parse, "prime table: unsupported bit size in header");
        bits = static_cast<unsigned>(kval);
    }
    std::vector<std::uint64_t> entries;
    entries.reserve(count);
    std::string line;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (!std::getline(in, line))
            raise(Errc::parse, "prime table: header claims " + std::to_string(count) +
                                   " entries but file has " + std::to_string(i));
        std::uint64_t p = 0;
        if (!parse_u64(line, p))
            raise(Errc::parse, "prime table line " + std::to_string(i + 2) +
                                   ": not a decimal integer: '" + line + "'");
        entries.push_back(p);
    }
    if (std::getline(in, line))
        raise(Errc::parse, "prime table: trailing content after " + std::to_string(count) +
                               " entries");
    try {
        return PrimeTable(bits, std::move(entries));
    } catch (const Error& e) {
        if (e.code() == Errc::integrity)
            throw; // message already names the offending line
        raise(Errc::integrity, e.what());
    }
}

PrimeTable PrimeTable::load_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        raise(Errc::io, "prime table: cannot open '" + path + "'");
    return load(f);
}

} // namespace ef

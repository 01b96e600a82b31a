#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "error.hpp"

namespace ef {

// Ordered collection of safe primes of one exact bit size. The generator's
// hidden moduli are drawn from it by index, so entries are kept sorted
// ascending: rebuilding over the same range always yields the same mapping.
//
// On-disk format (bit-exact):
//   SAFEPRIMES v1 k=<k> count=<n>\n
//   <prime>\n            (n lines, decimal, strictly ascending)
// with no trailing blank line.
class PrimeTable {
public:
    // Enumerate k-bit safe primes ascending from 2^(k-1). count == 0 means
    // every safe prime in the range; otherwise the lowest `count` of them.
    // Raises Errc::exhausted when the range holds fewer than `count`.
    static PrimeTable build(unsigned bits, std::uint64_t count);

    static PrimeTable load(std::istream& in);
    static PrimeTable load_file(const std::string& path);
    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;

    unsigned bits() const { return bits_; }
    std::uint64_t count() const { return entries_.size(); }
    // Largest r with 2^r <= count; refreshed index values are reduced mod 2^r.
    unsigned index_exponent() const;
    // log2 of the seed space for s indexes into this table: k + s*r.
    unsigned log2_keyspace(unsigned index_count) const;

    std::uint64_t get(std::uint64_t index) const;
    const std::vector<std::uint64_t>& entries() const { return entries_; }

    bool operator==(const PrimeTable&) const = default;

private:
    PrimeTable(unsigned bits, std::vector<std::uint64_t> entries);
    void validate() const;

    unsigned bits_ = 0;
    std::vector<std::uint64_t> entries_;
};

} // namespace ef

#include <doctest.h>

#include <sstream>

#include "entropy.hpp"
#include "oracles.hpp"
#include "prime_table.hpp"
#include "test_util.hpp"

using namespace ef;
using testutil::raises;

TEST_CASE("build matches brute-force enumeration for k = 8 and k = 9") {
    CHECK(PrimeTable::build(8, 0).entries() == oracle::safe_primes_in(128, 255));
    CHECK(PrimeTable::build(9, 0).entries() == oracle::safe_primes_in(256, 511));
    CHECK(PrimeTable::build(8, 0).entries() == std::vector<std::uint64_t>{167, 179, 227});
}

TEST_CASE("build with explicit count") {
    const PrimeTable t = PrimeTable::build(16, 64);
    CHECK(t.count() == 64);
    CHECK(t.bits() == 16);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < t.count(); ++i) {
        const std::uint64_t p = t.get(i);
        CHECK(oracle::is_safe_prime(p));
        CHECK(p > prev);
        CHECK(p >= (1ULL << 15));
        CHECK(p < (1ULL << 16));
        prev = p;
    }
}

TEST_CASE("build exhaustion reports the partial count") {
    try {
        PrimeTable::build(8, 1000000);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::exhausted);
        CHECK(std::string(e.what()).find("only 3") != std::string::npos);
    }
}

TEST_CASE("get bounds") {
    const PrimeTable t = PrimeTable::build(8, 0);
    CHECK(t.get(0) == 167);
    CHECK(t.get(t.count() - 1) == 227);
    CHECK(raises(Errc::index_range, [&] { t.get(t.count()); }));
}

TEST_CASE("index exponent is the largest r with 2^r <= count") {
    CHECK(PrimeTable::build(16, 64).index_exponent() == 6);
    CHECK(PrimeTable::build(16, 65).index_exponent() == 6);
    CHECK(PrimeTable::build(16, 127).index_exponent() == 6);
    CHECK(PrimeTable::build(16, 128).index_exponent() == 7);
    CHECK(PrimeTable::build(8, 2).index_exponent() == 1);
    CHECK(PrimeTable::build(8, 3).index_exponent() == 1);
}

TEST_CASE("keyspace accounting k + s*r against direct arithmetic") {
    const PrimeTable t = PrimeTable::build(16, 64); // r = 6
    const unsigned bits = t.log2_keyspace(6);
    CHECK(bits == 16 + 6 * 6);
    // 2^(k+s*r) really is the product of the per-component counts
    BigUint direct = BigUint(1) << 16;
    for (int i = 0; i < 6; ++i)
        direct *= BigUint(1) << 6;
    CHECK((BigUint(1) << bits) == direct);
}

TEST_CASE("save emits the exact documented bytes") {
    const PrimeTable t = PrimeTable::build(8, 2);
    std::ostringstream os;
    t.save(os);
    CHECK(os.str() == "SAFEPRIMES v1 k=8 count=2\n167\n179\n");
}

TEST_CASE("save/load round trip over random subsets") {
    const PrimeTable all16 = PrimeTable::build(16, 0);
    SeededEntropy ent(99);
    for (int rep = 0; rep < 20; ++rep) {
        // random strictly-ascending subset of the 16-bit table
        std::vector<std::uint64_t> subset;
        for (std::uint64_t i = 0; i < all16.count(); ++i)
            if (ent.below(3) == 0)
                subset.push_back(all16.get(i));
        if (subset.size() < 2)
            continue;
        std::ostringstream os;
        os << "SAFEPRIMES v1 k=16 count=" << subset.size() << '\n';
        for (std::uint64_t p : subset)
            os << p << '\n';
        std::istringstream is(os.str());
        const PrimeTable loaded = PrimeTable::load(is);
        CHECK(loaded.entries() == subset);
        std::ostringstream os2;
        loaded.save(os2);
        CHECK(os2.str() == os.str());
    }
}

TEST_CASE("load rejects malformed inputs") {
    auto load_str = [](const std::string& text) {
        std::istringstream is(text);
        return PrimeTable::load(is);
    };
    // wrong bit length: 13 has 4 bits, header says 8
    try {
        load_str("SAFEPRIMES v1 k=8 count=2\n13\n167\n");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::integrity);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    // count mismatch
    CHECK(raises(Errc::parse, [&] { load_str("SAFEPRIMES v1 k=8 count=3\n167\n179\n"); }));
    // trailing content
    CHECK(raises(Errc::parse, [&] { load_str("SAFEPRIMES v1 k=8 count=2\n167\n179\n\n"); }));
    // not a safe prime (239: (239-1)/2 = 119 = 7*17)
    CHECK(raises(Errc::integrity,
                 [&] { load_str("SAFEPRIMES v1 k=8 count=2\n167\n239\n"); }));
    // out of order
    CHECK(raises(Errc::integrity,
                 [&] { load_str("SAFEPRIMES v1 k=8 count=2\n179\n167\n"); }));
    // malformed headers
    CHECK(raises(Errc::parse, [&] { load_str("SAFEPRIME v1 k=8 count=2\n167\n179\n"); }));
    CHECK(raises(Errc::parse, [&] { load_str("SAFEPRIMES v2 k=8 count=2\n167\n179\n"); }));
    CHECK(raises(Errc::parse, [&] { load_str("SAFEPRIMES v1 k=x count=2\n167\n179\n"); }));
    CHECK(raises(Errc::parse, [&] { load_str(""); }));
    // fewer than two entries is not a usable table
    CHECK(raises(Errc::integrity, [&] { load_str("SAFEPRIMES v1 k=8 count=1\n167\n"); }));
}

TEST_CASE("load accepts a valid 8-bit table file") {
    std::istringstream is("SAFEPRIMES v1 k=8 count=3\n167\n179\n227\n");
    const PrimeTable t = PrimeTable::load(is);
    CHECK(t.entries() == std::vector<std::uint64_t>{167, 179, 227});
}

TEST_CASE("file round trip") {
    const PrimeTable t = PrimeTable::build(16, 32);
    const std::string path = "prime_table_test.tmp";
    t.save_file(path);
    const PrimeTable loaded = PrimeTable::load_file(path);
    CHECK(loaded == t);
    std::remove(path.c_str());
    CHECK(raises(Errc::io, [&] { PrimeTable::load_file("does_not_exist.tmp"); }));
}

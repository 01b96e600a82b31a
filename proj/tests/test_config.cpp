#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "builtin_primes.hpp"
#include "prime_table.hpp"
#include "prng.hpp"
#include "run_config.hpp"
#include "test_util.hpp"

using namespace ef;
using testutil::raises;

TEST_CASE("set/get and unknown keys") {
    RunConfig cfg;
    cfg.set("k", "16");
    CHECK(cfg.get("k") == std::string("16"));
    CHECK_FALSE(cfg.get("s").has_value());
    try {
        cfg.set("kk", "1");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config);
        CHECK(std::string(e.what()).find("'kk'") != std::string::npos);
    }
}

TEST_CASE("file parsing with comments and spacing") {
    std::istringstream in("# generator settings\n"
                          "k = 16\n"
                          "  qbits=80   # toy size\n"
                          "\n"
                          "seed = 0x3039\n"
                          "indexes = 1, 3, 5, 7, 11, 13\n");
    const RunConfig cfg = RunConfig::load(in);
    CHECK(cfg.get("k") == std::string("16"));
    CHECK(cfg.get("qbits") == std::string("80"));
    CHECK(cfg.seed() == 12345); // hex accepted
    CHECK(cfg.indexes() == std::vector<std::uint64_t>{1, 3, 5, 7, 11, 13});
    std::istringstream bad("k 16\n");
    CHECK(raises(Errc::config, [&] { RunConfig::load(bad); }));
}

TEST_CASE("round trip through the file form") {
    RunConfig cfg;
    cfg.set("k", "16");
    cfg.set("qbits", "80");
    cfg.set("seed", "12345");
    cfg.set("format", "raw-le");
    cfg.set("security_mode", "false");
    const std::string text = cfg.to_string();
    std::istringstream in(text);
    const RunConfig back = RunConfig::load(in);
    CHECK(back == cfg);
    CHECK(back.to_string() == text);
}

TEST_CASE("seed parsing and range") {
    RunConfig cfg;
    CHECK(cfg.seed() == 0);
    cfg.set("seed", "4294967296"); // 2^32 inclusive
    CHECK(cfg.seed() == 4294967296ULL);
    cfg.set("seed", "4294967297");
    CHECK(raises(Errc::config, [&] { cfg.seed(); }));
    cfg.set("seed", "abc");
    CHECK(raises(Errc::config, [&] { cfg.seed(); }));
}

TEST_CASE("format parsing") {
    CHECK(parse_format("raw-be") == WordFormat::raw_be);
    CHECK(parse_format("raw-le") == WordFormat::raw_le);
    CHECK(parse_format("hex") == WordFormat::hex);
    CHECK(raises(Errc::config, [] { parse_format("base64"); }));
    RunConfig cfg;
    CHECK(cfg.format() == WordFormat::raw_be); // default
}

TEST_CASE("make_params resolves qbits through the builtin constants") {
    RunConfig cfg;
    cfg.set("qbits", "80");
    cfg.set("k", "16");
    const PrngParams p = cfg.make_params();
    CHECK(p.q == builtin_safe_prime(80));
    CHECK(bit_length(p.skip_modulus) == 32);
    CHECK(p.word_bits == 16);
    CHECK(p.index_count == 6);        // default s
    CHECK(p.refresh_period == 2048);  // default M_R
    CHECK(p.feistel_rounds == 4);
    CHECK(p.chain_exponent == 17);
    CHECK(p.mix_exponent == 9);
    CHECK_FALSE(p.stretch);
}

TEST_CASE("explicit q wins over qbits") {
    RunConfig cfg;
    cfg.set("q", builtin_safe_prime(80).get_str(10));
    cfg.set("qbits", "260");
    cfg.set("k", "16");
    CHECK(cfg.make_params().q == builtin_safe_prime(80));
}

TEST_CASE("security mode rejects a 260-bit q at generator construction") {
    RunConfig cfg;
    cfg.set("qbits", "260");
    cfg.set("k", "32");
    cfg.set("security_mode", "true");
    const PrimeTable table = PrimeTable::build(32, 4);
    CHECK(raises(Errc::config, [&] {
        Prng prng(cfg.make_params(), table, 1,
                  std::vector<std::uint64_t>{0, 1, 2, 3, 0, 1});
    }));
}

TEST_CASE("battery config keys") {
    RunConfig cfg;
    stats::BatteryConfig def = cfg.battery();
    CHECK(def.subsequences == 64);
    CHECK(def.alpha == 0.001);
    CHECK(def.meta_alpha == 0.01);
    CHECK(def.lags == std::vector<std::uint64_t>{1, 2, 4});
    CHECK(def.block_sizes == std::vector<unsigned>{32, 256});
    cfg.set("battery_m", "8");
    cfg.set("alpha", "0.01");
    cfg.set("lags", "1,8");
    cfg.set("block_sizes", "16");
    const stats::BatteryConfig b = cfg.battery();
    CHECK(b.subsequences == 8);
    CHECK(b.alpha == 0.01);
    CHECK(b.lags == std::vector<std::uint64_t>{1, 8});
    CHECK(b.block_sizes == std::vector<unsigned>{16});
    cfg.set("alpha", "0.7");
    CHECK(raises(Errc::config, [&] { cfg.battery(); }));
}

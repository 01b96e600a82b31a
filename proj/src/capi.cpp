#include "expofeistel.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "prime_table.hpp"
#include "prng.hpp"
#include "run_config.hpp"
#include "selftest.hpp"
#include "stats.hpp"

namespace {

thread_local std::string g_last_error;

ef_status errc_to_status(ef::Errc code) {
    using ef::Errc;
    switch (code) {
    case Errc::invalid_argument:
        return EF_ERR_ARGUMENT;
    case Errc::domain:
    case Errc::no_root:
    case Errc::unsupported_modulus:
        return EF_ERR_DOMAIN;
    case Errc::parse:
        return EF_ERR_PARSE;
    case Errc::integrity:
        return EF_ERR_INTEGRITY;
    case Errc::exhausted:
        return EF_ERR_EXHAUSTED;
    case Errc::io:
        return EF_ERR_IO;
    case Errc::insufficient_data:
        return EF_ERR_DATA;
    case Errc::config:
    case Errc::index_range:
        return EF_ERR_CONFIG;
    case Errc::internal:
        return EF_ERR_INTERNAL;
    }
    return EF_ERR_INTERNAL;
}

template <typename Fn> ef_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return EF_OK;
    } catch (const ef::Error& e) {
        g_last_error = e.what();
        return errc_to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return EF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return EF_ERR_INTERNAL;
    }
}

ef_status fail_argument(const char* message) {
    g_last_error = message;
    return EF_ERR_ARGUMENT;
}

} // namespace

struct ef_table {
    ef::PrimeTable table;
};

struct ef_config {
    ef::RunConfig config;
};

struct ef_prng {
    // prng holds a reference to the table; keep the snapshot it was built on
    std::unique_ptr<ef::PrimeTable> table;
    std::unique_ptr<ef::Prng> prng;
};

struct ef_report {
    ef::stats::TestReport report;
};

extern "C" {

const char* ef_version(void) { return "1.0.0"; }

const char* ef_last_error(void) { return g_last_error.c_str(); }

/* ---- tables ----------------------------------------------------------- */

ef_status ef_table_build(unsigned bits, uint64_t count, ef_table** out) {
    if (!out)
        return fail_argument("ef_table_build: out is null");
    *out = nullptr;
    return guarded([&] { *out = new ef_table{ef::PrimeTable::build(bits, count)}; });
}

ef_status ef_table_load_file(const char* path, ef_table** out) {
    if (!out || !path)
        return fail_argument("ef_table_load_file: null argument");
    *out = nullptr;
    return guarded([&] { *out = new ef_table{ef::PrimeTable::load_file(path)}; });
}

ef_status ef_table_save_file(const ef_table* table, const char* path) {
    if (!table || !path)
        return fail_argument("ef_table_save_file: null argument");
    return guarded([&] { table->table.save_file(path); });
}

void ef_table_free(ef_table* table) { delete table; }

unsigned ef_table_bits(const ef_table* table) { return table ? table->table.bits() : 0; }

uint64_t ef_table_count(const ef_table* table) { return table ? table->table.count() : 0; }

unsigned ef_table_index_exponent(const ef_table* table) {
    return table ? table->table.index_exponent() : 0;
}

unsigned ef_table_log2_keyspace(const ef_table* table, unsigned s) {
    return table ? table->table.log2_keyspace(s) : 0;
}

ef_status ef_table_entry(const ef_table* table, uint64_t index, uint64_t* prime) {
    if (!table || !prime)
        return fail_argument("ef_table_entry: null argument");
    return guarded([&] { *prime = table->table.get(index); });
}

/* ---- config ------------------------------------------------------------ */

ef_config* ef_config_new(void) { return new (std::nothrow) ef_config{}; }

void ef_config_free(ef_config* config) { delete config; }

ef_status ef_config_set(ef_config* config, const char* key, const char* value) {
    if (!config || !key || !value)
        return fail_argument("ef_config_set: null argument");
    return guarded([&] { config->config.set(key, value); });
}

ef_status ef_config_get(const ef_config* config, const char* key, char* buf,
                        size_t buflen) {
    if (!config || !key || !buf)
        return fail_argument("ef_config_get: null argument");
    const auto v = config->config.get(key);
    if (!v)
        return fail_argument("ef_config_get: key not set");
    if (v->size() + 1 > buflen)
        return fail_argument("ef_config_get: buffer too small");
    std::memcpy(buf, v->c_str(), v->size() + 1);
    g_last_error.clear();
    return EF_OK;
}

ef_status ef_config_load_file(ef_config* config, const char* path) {
    if (!config || !path)
        return fail_argument("ef_config_load_file: null argument");
    return guarded([&] { config->config = ef::RunConfig::load_file(path); });
}

ef_status ef_config_save_file(const ef_config* config, const char* path) {
    if (!config || !path)
        return fail_argument("ef_config_save_file: null argument");
    return guarded([&] { config->config.save_file(path); });
}

/* ---- generator ----------------------------------------------------------- */

ef_status ef_prng_create(const ef_config* config, const ef_table* table, ef_prng** out) {
    if (!config || !table || !out)
        return fail_argument("ef_prng_create: null argument");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<ef_prng>();
        handle->table = std::make_unique<ef::PrimeTable>(table->table);
        handle->prng = std::make_unique<ef::Prng>(config->config.make_params(),
                                                  *handle->table, config->config.seed(),
                                                  config->config.indexes());
        *out = handle.release();
    });
}

void ef_prng_free(ef_prng* prng) { delete prng; }

unsigned ef_prng_word_bits(const ef_prng* prng) {
    return prng ? prng->prng->params().word_bits : 0;
}

ef_status ef_prng_next_word(ef_prng* prng, uint64_t* word) {
    if (!prng || !word)
        return fail_argument("ef_prng_next_word: null argument");
    return guarded([&] { *word = prng->prng->next(); });
}

ef_status ef_prng_generate(ef_prng* prng, uint64_t nwords, int big_endian, uint8_t* buf,
                           size_t buflen) {
    if (!prng || !buf)
        return fail_argument("ef_prng_generate: null argument");
    const unsigned bytes_per_word = prng->prng->params().word_bits / 8;
    if (buflen < nwords * bytes_per_word)
        return fail_argument("ef_prng_generate: buffer too small");
    return guarded([&] {
        for (uint64_t i = 0; i < nwords; ++i) {
            const ef::Word w = prng->prng->next();
            uint8_t* dst = buf + i * bytes_per_word;
            for (unsigned b = 0; b < bytes_per_word; ++b) {
                const unsigned shift =
                    big_endian ? 8 * (bytes_per_word - 1 - b) : 8 * b;
                dst[b] = static_cast<uint8_t>((w >> shift) & 0xff);
            }
        }
    });
}

/* ---- battery --------------------------------------------------------------- */

ef_status ef_battery_run(const uint8_t* data, uint64_t nbits, const ef_config* config,
                         ef_report** out) {
    if (!data || !config || !out)
        return fail_argument("ef_battery_run: null argument");
    *out = nullptr;
    return guarded([&] {
        const ef::stats::BitSeq stream(data, nbits);
        *out = new ef_report{ef::stats::run_battery(stream, config->config.battery())};
    });
}

void ef_report_free(ef_report* report) { delete report; }

ef_status ef_report_totals_get(const ef_report* report, ef_report_totals* out) {
    if (!report || !out)
        return fail_argument("ef_report_totals_get: null argument");
    const ef::stats::TestReport& r = report->report;
    out->executed = r.executed();
    out->passed = r.count(ef::stats::Verdict::pass);
    out->suspicious = r.count(ef::stats::Verdict::suspicious);
    out->failures = r.count(ef::stats::Verdict::failure);
    out->skipped = r.skipped_count();
    out->ratios_passed = 1;
    for (const auto& ratio : r.ratios)
        if (!ratio.passed)
            out->ratios_passed = 0;
    out->uniformity_passed = 1;
    for (const auto& u : r.uniformity)
        if (!u.accepted)
            out->uniformity_passed = 0;
    g_last_error.clear();
    return EF_OK;
}

ef_status ef_report_render(const ef_report* report, char** out) {
    if (!report || !out)
        return fail_argument("ef_report_render: null argument");
    return guarded([&] {
        const std::string text = report->report.to_string();
        char* s = static_cast<char*>(std::malloc(text.size() + 1));
        if (!s)
            throw std::bad_alloc();
        std::memcpy(s, text.c_str(), text.size() + 1);
        *out = s;
    });
}

void ef_string_free(char* s) { std::free(s); }

/* ---- self test --------------------------------------------------------------- */

int ef_selftest(int verbose) { return ef::run_selftest(verbose ? &std::cout : nullptr); }

} // extern "C"

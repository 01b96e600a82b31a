/*
 * expofeistel - deterministic random word generator built from chained
 * modular exponentiations over hidden safe primes with Feistel-like output
 * mixing, plus safe-prime table tooling and a small statistical battery.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns an ef_status, and
 * ef_last_error() describes the most recent failure on the calling thread.
 * Handles are not thread-safe; use one per thread or guard externally.
 */
#ifndef EXPOFEISTEL_H
#define EXPOFEISTEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef EF_API
#if defined(_WIN32)
#define EF_API
#else
#define EF_API __attribute__((visibility("default")))
#endif
#endif

typedef enum ef_status {
    EF_OK = 0,
    EF_ERR_ARGUMENT = 1,     /* bad argument or null handle */
    EF_ERR_DOMAIN = 2,       /* value outside an operation's domain */
    EF_ERR_PARSE = 3,        /* malformed file or literal */
    EF_ERR_INTEGRITY = 4,    /* data read back failed validation */
    EF_ERR_EXHAUSTED = 5,    /* search space ran out */
    EF_ERR_IO = 6,           /* file system failure */
    EF_ERR_DATA = 7,         /* not enough input data */
    EF_ERR_CONFIG = 8,       /* invalid parameter combination */
    EF_ERR_INTERNAL = 9
} ef_status;

EF_API const char* ef_version(void);

/* Message for the last failing call on this thread; empty string if none. */
EF_API const char* ef_last_error(void);

/* ---- safe prime tables ---------------------------------------------- */

typedef struct ef_table ef_table;

/* Enumerate `bits`-bit safe primes ascending; count == 0 takes the whole
 * range (bits <= 24), otherwise the lowest `count` primes. */
EF_API ef_status ef_table_build(unsigned bits, uint64_t count, ef_table** out);
EF_API ef_status ef_table_load_file(const char* path, ef_table** out);
EF_API ef_status ef_table_save_file(const ef_table* table, const char* path);
EF_API void ef_table_free(ef_table* table);

EF_API unsigned ef_table_bits(const ef_table* table);
EF_API uint64_t ef_table_count(const ef_table* table);
/* Largest r with 2^r <= count. */
EF_API unsigned ef_table_index_exponent(const ef_table* table);
/* log2 of the seed space when s indexes select from this table: k + s*r. */
EF_API unsigned ef_table_log2_keyspace(const ef_table* table, unsigned s);
EF_API ef_status ef_table_entry(const ef_table* table, uint64_t index, uint64_t* prime);

/* ---- configuration ---------------------------------------------------- */

/* Key/value settings; the file form is one `key = value` per line with `#`
 * comments. Generator keys: q, qbits, g, k, s, mr, nrounds, e1, e2, skip_p,
 * skip_a, stretch, security_mode, seed, indexes, table, n, format, out.
 * Battery keys: battery_m, alpha, meta_alpha, lags, block_sizes, bits. */
typedef struct ef_config ef_config;

EF_API ef_config* ef_config_new(void);
EF_API void ef_config_free(ef_config* config);
EF_API ef_status ef_config_set(ef_config* config, const char* key, const char* value);
/* Copies the value into buf (NUL-terminated); EF_ERR_ARGUMENT when absent or
 * the buffer is too small. */
EF_API ef_status ef_config_get(const ef_config* config, const char* key, char* buf,
                               size_t buflen);
EF_API ef_status ef_config_load_file(ef_config* config, const char* path);
EF_API ef_status ef_config_save_file(const ef_config* config, const char* path);

/* ---- generator -------------------------------------------------------- */

typedef struct ef_prng ef_prng;

/* Builds a generator from the configuration over a table of k-bit safe
 * primes. Explicit `indexes` in the config are honored; otherwise the index
 * set is derived from the seed by one refresh over all-zero indexes. */
EF_API ef_status ef_prng_create(const ef_config* config, const ef_table* table,
                                ef_prng** out);
EF_API void ef_prng_free(ef_prng* prng);

EF_API unsigned ef_prng_word_bits(const ef_prng* prng);
EF_API ef_status ef_prng_next_word(ef_prng* prng, uint64_t* word);
/* Serializes `nwords` words into buf, k/8 bytes each, most significant byte
 * first (big_endian != 0) or least significant first. buflen must be at
 * least nwords * k/8. */
EF_API ef_status ef_prng_generate(ef_prng* prng, uint64_t nwords, int big_endian,
                                  uint8_t* buf, size_t buflen);

/* ---- statistical battery ---------------------------------------------- */

typedef struct ef_report ef_report;

typedef struct ef_report_totals {
    uint64_t executed;   /* results actually run */
    uint64_t passed;
    uint64_t suspicious;
    uint64_t failures;
    uint64_t skipped;
    int ratios_passed;     /* every per-test pass ratio above threshold */
    int uniformity_passed; /* every KS/AD/chi2 uniformity check accepted */
} ef_report_totals;

/* Runs the battery kernels over `nbits` bits of data (most significant bit
 * of data[0] first), split into battery_m subsequences. */
EF_API ef_status ef_battery_run(const uint8_t* data, uint64_t nbits,
                                const ef_config* config, ef_report** out);
EF_API void ef_report_free(ef_report* report);
EF_API ef_status ef_report_totals_get(const ef_report* report, ef_report_totals* out);
/* Full report text: one tab-separated line per result plus #RATIO / #UNIF
 * summary lines. Free with ef_string_free. */
EF_API ef_status ef_report_render(const ef_report* report, char** out);
EF_API void ef_string_free(char* s);

/* ---- self test ---------------------------------------------------------- */

/* Runs the embedded known-answer checks; 0 on success, 1 on any mismatch.
 * verbose != 0 prints one line per check to stdout. */
EF_API int ef_selftest(int verbose);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXPOFEISTEL_H */

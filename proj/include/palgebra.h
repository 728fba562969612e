#ifndef PALGEBRA_H
#define PALGEBRA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PALG_API __declspec(dllexport)
#else
#define PALG_API __attribute__((visibility("default")))
#endif

/* Stands for n = omega wherever a variety or free-algebra depth is taken. */
#define PALG_OMEGA 0xFFFFFFFFu

typedef enum palg_status {
  PALG_OK = 0,
  PALG_CAP_EXCEEDED,
  PALG_BUDGET_EXCEEDED,
  PALG_SYNTAX_ERROR,
  PALG_UNKNOWN_IDENTIFIER,
  PALG_UNBOUND_VARIABLE,
  PALG_MALFORMED_TABLES,
  PALG_NOT_A_CONGRUENCE,
  PALG_NOT_PRIME,
  PALG_BAD_INDEX,
  PALG_INDEX_OUT_OF_RANGE,
  PALG_INVALID_ARGUMENT,
  PALG_IO_ERROR,
  PALG_INTERNAL_ERROR
} palg_status;

typedef enum palg_limit {
  PALG_LIMIT_POSET_SIZE,
  PALG_LIMIT_TABLE_SIZE,
  PALG_LIMIT_ORACLE_SIZE,
  PALG_LIMIT_UPSET_COUNT,
  PALG_LIMIT_VALUATION_BUDGET
} palg_limit;

/* A context carries limits and the last error. One context per thread. */
typedef struct palg_context palg_context;
typedef struct palg_algebra palg_algebra;
typedef struct palg_term palg_term;

PALG_API const char* palg_version(void);
/* "OK", "CapExceeded", "SyntaxError", ... */
PALG_API const char* palg_status_name(palg_status status);

PALG_API palg_context* palg_context_new(void);
PALG_API void palg_context_free(palg_context* ctx);
/* Values must be positive. */
PALG_API palg_status palg_set_limit(palg_context* ctx, palg_limit limit, uint64_t value);
PALG_API uint64_t palg_get_limit(const palg_context* ctx, palg_limit limit);
PALG_API palg_status palg_last_status(const palg_context* ctx);
/* Message of the last failure, "" after success. Owned by ctx. */
PALG_API const char* palg_last_error(const palg_context* ctx);
/* {"error": name, "message": text} for the last failure. Owned by ctx. */
PALG_API const char* palg_last_error_json(const palg_context* ctx);

/* Every char** result is heap-allocated and released with palg_string_free. */
PALG_API void palg_string_free(char* s);

/* spec: "si:n", "chain:m", "bool:n", "free:n,k" (n may be "omega"),
 * "dist:s", or the path of a JSON algebra file. */
PALG_API palg_status palg_algebra_load(palg_context* ctx, const char* spec, palg_algebra** out);
PALG_API palg_status palg_algebra_from_json(palg_context* ctx, const char* json,
                                            palg_algebra** out);
PALG_API void palg_algebra_free(palg_algebra* a);
PALG_API size_t palg_algebra_size(const palg_algebra* a);
PALG_API palg_status palg_algebra_to_json(palg_context* ctx, const palg_algebra* a, char** out);
/* *ok = 1 iff the tables satisfy every p-algebra law; out lists violations. */
PALG_API palg_status palg_algebra_validate(palg_context* ctx, const palg_algebra* a, int* ok,
                                           char** out);
/* Cm records with both orders on them. */
PALG_API palg_status palg_dual(palg_context* ctx, const palg_algebra* a, char** out);

PALG_API palg_status palg_term_parse(palg_context* ctx, const char* text, palg_term** out);
PALG_API void palg_term_free(palg_term* t);
PALG_API palg_status palg_term_to_string(palg_context* ctx, const palg_term* t, char** out);
PALG_API palg_status palg_term_to_json(palg_context* ctx, const palg_term* t, char** out);
PALG_API palg_status palg_normal_form(palg_context* ctx, const palg_term* t, unsigned n,
                                     char** out);

/* variety: "pa", "paN"; method: "normal-form" (or "nf") or "exhaustive".
 * *holds receives the verdict; out the verdict JSON. */
PALG_API palg_status palg_check_identity(palg_context* ctx, const char* lhs, const char* rhs,
                                         const char* variety, const char* method, int* holds,
                                         char** out);
/* qi_json: {"premises": [...], "conclusion": ...}; strategy "exhaustive" or "pruned". */
PALG_API palg_status palg_check_quasi_identity(palg_context* ctx, const char* qi_json,
                                               const palg_algebra* a, const char* strategy,
                                               int* holds, char** out);
PALG_API palg_status palg_qb_system(palg_context* ctx, unsigned n, char** out);

/* {n, k, jCount, elementCount?, indices?}. */
PALG_API palg_status palg_free_info(palg_context* ctx, unsigned n, unsigned k, int count_only,
                                    char** out);
/* DOT of J(F_n(k)) in lattice order. */
PALG_API palg_status palg_free_dot(palg_context* ctx, unsigned n, unsigned k, char** out);
/* Decimal string; exact for every rank. */
PALG_API palg_status palg_count_jirr(palg_context* ctx, unsigned n, unsigned k, char** out);

PALG_API palg_status palg_si_info(palg_context* ctx, unsigned n, char** out);
PALG_API palg_status palg_report(palg_context* ctx, unsigned n, char** out);

PALG_API palg_status palg_oracle_pair(palg_context* ctx, const char* t1, const char* t2,
                                      unsigned n, int* agree, char** out);
PALG_API palg_status palg_oracle_batch(palg_context* ctx, uint64_t trials, uint64_t seed,
                                       int* all_agree, char** out);

#ifdef __cplusplus
}
#endif

#endif

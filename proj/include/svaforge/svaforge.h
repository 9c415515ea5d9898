// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SVAFORGE_SVAFORGE_H
#define SVAFORGE_SVAFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SVF_API __declspec(dllexport)
#else
#define SVF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returns a status. On failure the message is available
 * from svf_last_error() on the calling thread until the next call. */
typedef enum svf_status {
  SVF_OK = 0,
  SVF_ERR_PARSE = 1,
  SVF_ERR_UNSUPPORTED = 2,
  SVF_ERR_UNKNOWN_SIGNAL = 3,
  SVF_ERR_BOUND = 4,
  SVF_ERR_DESIGN = 5,
  SVF_ERR_IO = 6,
  SVF_ERR_CONFIG = 7,
  SVF_ERR_CHECKPOINT = 8,
  SVF_ERR_BACKEND = 9,
  SVF_ERR_TOOL = 10,
  SVF_ERR_INVALID_ARGUMENT = 11,
  SVF_ERR_INTERNAL = 99
} svf_status;

typedef enum svf_outcome {
  SVF_HOLDS = 0,
  SVF_FAILS = 1,
  SVF_EQUIVALENT = 2,
  SVF_DISTINGUISHED = 3
} svf_outcome;

typedef struct svf_assertion svf_assertion;
typedef struct svf_design svf_design;
typedef struct svf_widths svf_widths;
typedef struct svf_report svf_report;

typedef struct svf_bound {
  uint32_t max_len;
  uint64_t max_states;
  uint32_t reset_ticks;
  uint32_t width_limit;
} svf_bound;

SVF_API const char *svf_version(void);
SVF_API const char *svf_last_error(void);
SVF_API const char *svf_status_name(svf_status status);
/* Frees strings returned through char** out-parameters. */
SVF_API void svf_string_free(char *s);
SVF_API svf_bound svf_bound_default(void);

/* Assertions. */
SVF_API svf_status svf_assertion_parse(const char *text, svf_assertion **out);
/* Parses the first assertion found in free text (e.g. a model reply). */
SVF_API svf_status svf_assertion_extract(const char *text, svf_assertion **out);
SVF_API svf_status svf_assertion_print(const svf_assertion *a, char **out);
SVF_API void svf_assertion_free(svf_assertion *a);

/* Designs. reset_patterns may be NULL for the defaults. */
SVF_API svf_status svf_design_parse(const char *source, const char *const *reset_patterns, size_t n_patterns,
                                    svf_design **out);
/* JSON {name, clock, reset:{signal, active_high, kind}, signals:[{name, width}]}. */
SVF_API svf_status svf_design_info_json(const svf_design *d, char **out);
SVF_API void svf_design_free(svf_design *d);

/* Width table for free-mode checks. */
SVF_API svf_widths *svf_widths_new(void);
SVF_API svf_status svf_widths_set(svf_widths *w, const char *signal, uint32_t width);
/* Parses "a=1,b=4" or "a:1 b:4". */
SVF_API svf_status svf_widths_parse(svf_widths *w, const char *table);
SVF_API void svf_widths_free(svf_widths *w);

/* Checks. */
SVF_API svf_status svf_check_holds(const svf_assertion *a, const svf_design *d, const svf_bound *bound,
                                   svf_report **out);
/* Equivalence over all traces of the signals in `widths`; tb_reset defaults to 1 bit. */
SVF_API svf_status svf_check_equivalent_free(const svf_assertion *a, const svf_assertion *b,
                                             const svf_widths *widths, const svf_bound *bound, svf_report **out);
/* Equivalence over the reachable traces of `d`. */
SVF_API svf_status svf_check_equivalent_design(const svf_assertion *a, const svf_assertion *b, const svf_design *d,
                                               const svf_bound *bound, svf_report **out);
SVF_API svf_status svf_check_tautology(const svf_assertion *a, const svf_widths *widths, const svf_bound *bound,
                                       int *is_tautology);
/* External prover; `b` or `d` selects equivalence or holds. `command` may
 * use {file1}, {file2}, {design}. */
SVF_API svf_status svf_check_external(const svf_assertion *a, const svf_assertion *b, const svf_design *d,
                                      const char *command, svf_report **out);

SVF_API svf_outcome svf_report_outcome(const svf_report *r);
SVF_API int svf_report_positive(const svf_report *r);
SVF_API int svf_report_tautology(const svf_report *r);
SVF_API svf_status svf_report_json(const svf_report *r, char **out);
/* Human-readable report with the witness as a tick-by-tick table. */
SVF_API svf_status svf_report_text(const svf_report *r, char **out);
SVF_API void svf_report_free(svf_report *r);

/* Pipeline. Runs stages from..to (1..7) of the configuration at
 * config_path over the manifest. seed < 0 keeps the configured seed.
 * summary_json and summary_table may be NULL. */
SVF_API svf_status svf_pipeline_run(const char *config_path, const char *manifest_path, const char *workdir,
                                    int from, int to, int64_t seed, char **summary_json, char **summary_table);

/* Functional-correctness evaluation. Problems are JSON Lines
 * {id, design (path), nl, ground_truth}; the backend is backends.<role> of
 * the configuration. Writes {n, backend, func_at_k:{k: value}, problems:[...]}. */
SVF_API svf_status svf_eval(const char *problems_path, const char *config_path, const char *role, uint32_t n,
                            const uint32_t *ks, size_t n_ks, const svf_bound *bound, char **report_json);
/* Exact estimator for one problem, as a double. */
SVF_API svf_status svf_func_at_k(uint32_t n, uint32_t c, uint32_t k, double *out);

/* Statistics over files with one document per line (.jsonl: JSON string or
 * object with "text"). */
SVF_API svf_status svf_diversity(const char *corpus_path, uint32_t n_gram, uint64_t pair_cap, uint64_t seed,
                                 double *out);
SVF_API svf_status svf_diversity_curve(const char *corpus_path, const size_t *sizes, size_t n_sizes, uint32_t n_gram,
                                       uint64_t pair_cap, uint64_t seed, char **csv);
/* {kept:[...], dropped:[{index, ngram}]} */
SVF_API svf_status svf_decontaminate(const char *train_path, const char *bench_path, uint32_t n, char **report_json);
/* Responses are JSON Lines strings or {"response": ...}; {sva, sync, proven, tautology}. */
SVF_API svf_status svf_count_e2e(const char *responses_path, const svf_design *d, const svf_bound *bound,
                                 char **report_json);

#ifdef __cplusplus
}
#endif

#endif /* SVAFORGE_SVAFORGE_H */

#ifndef STEPANOV_H
#define STEPANOV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define STP_API __declspec(dllexport)
#else
#define STP_API __attribute__((visibility("default")))
#endif

typedef enum stp_status {
  STP_OK = 0,
  STP_ERR_INVALID_ARGUMENT = 1,
  STP_ERR_INVALID_EXPONENT = 2,
  STP_ERR_SHAPE = 3,
  STP_ERR_INSUFFICIENT_WINDOW = 4,
  STP_ERR_ALIGNMENT = 5,
  STP_ERR_PARSE = 6,
  STP_ERR_EVALUATION = 7,
  STP_ERR_IO = 8,
  STP_ERR_UNCONFIGURED = 9,
  STP_ERR_NULL = 10,
  STP_ERR_INTERNAL = 99
} stp_status;

typedef struct stp_function stp_function;
typedef struct stp_sequence stp_sequence;
typedef struct stp_map stp_map;

/* Library version string; static storage. */
STP_API const char* stp_version(void);

/* JSON {"status", "code", "message", ...} for the last failing call on this
   thread, or NULL. Parse errors add "offset"; evaluation errors add "t" and
   "cell". Valid until the next failing call on the same thread. */
STP_API const char* stp_last_error(void);

/* Frees every char* returned through an out parameter. */
STP_API void stp_string_free(char* s);

/* ---- grid functions ---------------------------------------------------- */

/* norm_kind is "l1", "l2" or "linf"; NULL means "l2". */
STP_API stp_status stp_function_from_dsl(const char* expr, int m, long n_lo, long n_hi, const char* norm_kind,
                                         stp_function** out);
STP_API stp_status stp_function_from_catalog(const char* name, const char* params_json, int m, long n_lo, long n_hi,
                                             const char* norm_kind, stp_function** out);
STP_API stp_status stp_function_from_json(const char* json, stp_function** out);
/* .json or .csv by extension; m <= 0 infers the resolution from a CSV file. */
STP_API stp_status stp_function_load(const char* path, int m, const char* norm_kind, stp_function** out);
STP_API stp_status stp_function_to_json(const stp_function* u, char** out);
STP_API stp_status stp_function_to_csv(const stp_function* u, char** out);
STP_API stp_status stp_function_dim(const stp_function* u, size_t* out);
/* u + lambda * w */
STP_API stp_status stp_function_axpy(const stp_function* u, double lambda, const stp_function* w, stp_function** out);
STP_API void stp_function_free(stp_function* u);

/* ---- discrete Bochner sequences ---------------------------------------- */

STP_API stp_status stp_sequence_from_json(const char* json, stp_sequence** out);
STP_API stp_status stp_sequence_to_json(const stp_sequence* s, char** out);
STP_API void stp_sequence_free(stp_sequence* s);

/* ---- maps --------------------------------------------------------------- */

STP_API stp_status stp_map_from_catalog(const char* name, const char* params_json, size_t dim, const char* norm_kind,
                                        stp_map** out);
/* A map f(t, x) written in the expression DSL with x in R^dim. */
STP_API stp_status stp_map_from_dsl(const char* expr, size_t dim, double p, double q, const char* norm_kind,
                                    stp_map** out);
STP_API void stp_map_free(stp_map* f);

/* ---- operations; results are JSON documents ---------------------------- */

/* Stepanov norm bracket. */
STP_API stp_status stp_norm(const stp_function* u, double p, char** out_json);

/* op is "B", "D", "Dinv", "R" or "L". B, D take a grid function document; Dinv
   takes a sequence; R and L take a Bochner function. p tags D and R output. */
STP_API stp_status stp_transform(const char* op, const char* input_json, double p, char** out_json);

/* mode is "bohr" or "stepanov". */
STP_API stp_status stp_ap_scan(const stp_function* u, double epsilon, const char* mode, double p, double half_width,
                               int keep_curve, char** out_json);
STP_API stp_status stp_sequence_ap_scan(const stp_sequence* s, double epsilon, long half_width, char** out_json);
STP_API stp_status stp_aa_check(const stp_function* u, const double* shifts, size_t n_shifts, const double* probes,
                                size_t n_probes, double tolerance, char** out_json);
STP_API stp_status stp_tightness(const stp_function* u, const double* radii, size_t n, char** out_json);
STP_API stp_status stp_ui_modulus(const stp_function* u, double p, const double* deltas, size_t n, char** out_json);
STP_API stp_status stp_measure_defect(const stp_function* uk, const stp_function* u, double epsilon, char** out_json);
STP_API stp_status stp_apply(const stp_map* f, const stp_function* u, stp_function** out);

/* which: H1 H2 H3 H4 H5 lipschitz (alias eq49) autonomous-growth (alias eq50) c2.
   options_json may be NULL; see the README for the recognised keys. */
STP_API stp_status stp_hypothesis(const stp_map* f, const char* which, const char* options_json, char** out_json);

/* alpha_delta(t) on the ball of the given radius, sampled with count points. */
STP_API stp_status stp_modulus_alpha(const stp_map* f, double radius, size_t count, const double* deltas, size_t n,
                                     int m, long n_lo, long n_hi, char** out_json);

/* Continuity probe along u_k = u + w / scales[k]. */
STP_API stp_status stp_continuity_probe(const stp_map* f, const stp_function* u, const stp_function* w,
                                        const double* scales, size_t n, double p, double q, char** out_json);

/* suite is a suite id or "all". With include_timing == 0 the output is
   byte-identical across runs with the same seed. */
STP_API stp_status stp_verify(const char* suite, uint64_t seed, int include_timing, char** out_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif

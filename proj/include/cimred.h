/* cimred: cluster iteration maps and their symplectic reduction.
 *
 * C interface to the shared library. All objects are opaque handles owned
 * by the library; every function that can fail returns a cimred_status and
 * writes its result through an out-parameter. cimred_last_error() returns
 * a thread-local message for the most recent failure.
 */

#ifndef CIMRED_H
#define CIMRED_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cimred_status {
    CIMRED_OK = 0,
    CIMRED_BAD_ARGUMENT = 1,
    CIMRED_PARSE_ERROR = 2,
    CIMRED_NOT_SKEW = 3,
    CIMRED_INDEX_RANGE = 4,
    CIMRED_NOT_POSITIVE = 5,
    CIMRED_NOT_PERIODIC = 6,
    CIMRED_FULL_RANK = 7,
    CIMRED_BAD_TRANSFORM = 8,
    CIMRED_RANK_DEFICIENT = 9,
    CIMRED_SHAPE_MISMATCH = 10,
    CIMRED_UNKNOWN_FAMILY = 11,
    CIMRED_ZERO_SCALE = 12,
    CIMRED_INTERNAL = 13
} cimred_status;

typedef struct cimred_quiver cimred_quiver; /* validated skew integer matrix */
typedef struct cimred_report cimred_report; /* finished command output */

typedef struct cimred_options {
    uint64_t seed;                    /* default 42 */
    int trials;                       /* default 100 */
    double tol;                       /* default 1e-8 */
    int max_period;                   /* default 12 */
    const char* scale;                /* "p/q" or NULL (= 1) */
    const char* post_transform_json;  /* JSON array of arrays, or NULL */
} cimred_options;

void cimred_options_defaults(cimred_options* opts);

const char* cimred_version(void);
const char* cimred_status_name(cimred_status status);
const char* cimred_last_error(void);

/* ---- quiver handles ---------------------------------------------------- */

/* Parses a quiver document ({"matrix": [[...]]} or {"family": {...}}). */
cimred_status cimred_quiver_from_json(const char* text, cimred_quiver** out);

/* n*n row-major entries; validates skew-symmetry. */
cimred_status cimred_quiver_from_rows(int n, const int64_t* entries, cimred_quiver** out);

cimred_status cimred_quiver_fomin6(int64_t r, int64_t s, int64_t t, int64_t p,
                                   cimred_quiver** out);

void cimred_quiver_free(cimred_quiver* q);

int cimred_quiver_nodes(const cimred_quiver* q);

/* One-step matrix mutation at a 1-based node. */
cimred_status cimred_quiver_mutate(const cimred_quiver* q, int node, cimred_quiver** out);

/* Smallest verified period up to max_period; writes 0 when none. */
cimred_status cimred_quiver_period(const cimred_quiver* q, int max_period, int* period_out);

/* Serializes the quiver document; free with cimred_string_free. */
cimred_status cimred_quiver_to_json(const cimred_quiver* q, const char* label, char** json_out);

/* ---- commands ----------------------------------------------------------- */

cimred_status cimred_cmd_period(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out);
cimred_status cimred_cmd_reduce(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out);
cimred_status cimred_cmd_verify(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out);
cimred_status cimred_cmd_orbit(const cimred_quiver* q, const cimred_options* opts,
                               const double* u0, int u0_len, int steps, cimred_report** out);

/* ---- reports ------------------------------------------------------------ */

const char* cimred_report_text(const cimred_report* r);
const char* cimred_report_json(const cimred_report* r);
/* Process exit code the CLI should use: 0 ok, 3 full rank, 5 failed check. */
int cimred_report_exit_code(const cimred_report* r);
void cimred_report_free(cimred_report* r);

void cimred_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CIMRED_H */

#ifndef GPTCTX_H
#define GPTCTX_H

/* C interface to the gptctx library: finite-dimensional systems described by
 * state/effect polytope vertices, validation of univalent simulations,
 * classical-excess estimates, parity-oblivious multiplexing values and
 * yields, hierarchy comparison, and physical decode-map search.
 *
 * Conventions:
 *   - Functions returning gptctx_status report failures through the return
 *     code and record a thread-local message readable via gptctx_last_error.
 *   - Output strings (char**) are heap-allocated JSON documents with
 *     deterministic key order: identical inputs and configuration produce
 *     identical bytes. Release them with gptctx_string_free.
 *   - Handles are opaque and immutable after creation; sharing a handle
 *     across threads is safe.
 *   - Non-finite numbers (absent bounds) are encoded as JSON null.
 */

#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum gptctx_status {
    GPTCTX_OK = 0,
    GPTCTX_ERROR_PARSE = 1,            /* malformed name/JSON or schema violation */
    GPTCTX_ERROR_INVALID_ARGUMENT = 2, /* argument outside an operation's domain */
    GPTCTX_ERROR_SOLVER = 3,           /* numerical solver breakdown */
    GPTCTX_ERROR_INTERNAL = 4
} gptctx_status;

typedef struct gptctx_system gptctx_system;

typedef struct gptctx_config {
    double tolerance;      /* membership/validation tolerance, > 0 */
    uint64_t seed;         /* all randomness flows from this seed */
    int32_t restarts;      /* search restarts */
    int32_t max_iters;     /* iteration cap per restart */
    int32_t preserve_unit; /* nonzero: require unit preservation in embeddings */
    int32_t threads;       /* 0: GPTCTX_THREADS env var, else 1; >0: explicit cap */
} gptctx_config;

/* Library defaults: tolerance 1e-9, seed 0, 32 restarts, 200 iterations,
 * unit preservation off, threads 0. */
void gptctx_config_default(gptctx_config* cfg);

const char* gptctx_version(void);

/* Message of the most recent failure on the calling thread; "" if none.
 * Valid until the next gptctx call on the same thread. */
const char* gptctx_last_error(void);

void gptctx_string_free(char* text);

/* ---- systems ---------------------------------------------------------- */

/* name: "simplex:n" | "noisy-bit:alpha" | "toy-bit" | "squit" | "polygon:k" */
gptctx_status gptctx_system_from_name(const char* name, gptctx_system** out);

/* json_text: {"label", "dim", "state_vertices", "effect_vertices",
 * "unit_effect"} */
gptctx_status gptctx_system_from_json(const char* json_text, gptctx_system** out);

void gptctx_system_free(gptctx_system* sys);

gptctx_status gptctx_system_to_json(const gptctx_system* sys, char** out_json);

gptctx_status gptctx_system_label(const gptctx_system* sys, char** out_label);

/* Structural validation. *out_passed is 1/0; the report document is
 * {"passed": bool, "violations": [{"invariant", "indices", "magnitude"}]}.
 * Either output pointer may be NULL if that part is not wanted. */
gptctx_status gptctx_system_validate(const gptctx_system* sys, double tolerance,
                                     int32_t* out_passed, char** out_report_json);

/* ---- simulations ------------------------------------------------------ */

/* simulation_json: {"source", "target", "state_map", "effect_map",
 * "epsilon"}; source/target may be zoo names or embedded system documents.
 * Result: {"source", "target", "epsilonClaimed", "epsilonObserved",
 * "passed", "report"}. */
gptctx_status gptctx_simulation_validate(const char* simulation_json, double tolerance,
                                         int32_t preserve_unit, char** out_json);

/* ---- measures ---------------------------------------------------------- */

/* Classical-excess sweep over simplex sizes m = 1..m_max. Result:
 * {"system", "mMax", "perM": [{"m", "upper", "lower", "failed"}...],
 *  "stabilized", "stabilizedFlag", "lowerBound"}. */
gptctx_status gptctx_classical_excess(const gptctx_system* sys, int32_t m_max,
                                      const gptctx_config* cfg, char** out_json);

/* Parity-oblivious multiplexing value for n_bits >= 2. Result:
 * {"system", "bits", "value", "classicalBound", "solverFailure",
 *  "strategy": {"states", "effects", "success", "poResidual"}}. */
gptctx_status gptctx_pom_value(const gptctx_system* sys, int32_t n_bits,
                               const gptctx_config* cfg, char** out_json);

/* POM yield over free classical wires d = 1..d_max. Result:
 * {"system", "bits", "dMax", "value", "perD", "failedD", "stabilizedFlag"}. */
gptctx_status gptctx_pom_yield(const gptctx_system* sys, int32_t n_bits, int32_t d_max,
                               const gptctx_config* cfg, char** out_json);

/* Hierarchy comparison "a is simulable by b plus a free classical wire".
 * Result: {"a", "b", "nFreeMax", "verdict": "holds"|"refuted"|"inconclusive",
 *  "freeWireSize", "witnessLower", "simulatorUpper", "perN",
 *  "certificateEpsilon", "certificate"} (certificate fields only when the
 *  verdict is holds). */
gptctx_status gptctx_compare(const gptctx_system* a, const gptctx_system* b,
                             int32_t n_free_max, const gptctx_config* cfg, char** out_json);

/* ---- physical realisation ---------------------------------------------- */

/* Searches for a physical decode map of the simulation (same document schema
 * as gptctx_simulation_validate). Result:
 * {"status": "feasible"|"infeasible"|"solver-failure",
 *  "strictAdjoint": bool, "map": [[...]...]} ("map"/"strictAdjoint" only when
 * feasible). Infeasibility is reported only when certified by the solver;
 * numerical breakdown is the distinct "solver-failure". */
gptctx_status gptctx_find_realisation(const char* simulation_json, double tolerance,
                                      char** out_json);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* GPTCTX_H */

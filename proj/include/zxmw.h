/* C interface to the multiway/ZX rewriting engine.
 *
 * Conventions:
 *  - Every function returns 0 on success or a nonzero error code; the
 *    message for the most recent failure on the calling thread is available
 *    via zxmw_last_error().
 *  - Strings returned through char** out-parameters are heap-allocated and
 *    must be released with zxmw_string_free().
 *  - Handles are opaque and must be released with their _free function.
 */
#ifndef ZXMW_H
#define ZXMW_H

#ifdef __cplusplus
extern "C" {
#endif

#define ZXMW_OK 0
#define ZXMW_ERR_INVALID 1   /* bad arguments / parse errors */
#define ZXMW_ERR_CAP 2       /* resource cap exceeded */
#define ZXMW_ERR_INTERNAL 3  /* unexpected failure */

typedef struct zxmw_system zxmw_system;
typedef struct zxmw_graph zxmw_graph;

const char* zxmw_last_error(void);
void zxmw_string_free(char* s);

/* ---- systems ------------------------------------------------------- */

/* rules: "1->01,0->10" */
int zxmw_system_string(const char* rules, zxmw_system** out);
/* rules: "{{x,y}}->{{x,y},{y,z}}" (';' or newline separated for several) */
int zxmw_system_set(const char* rules, zxmw_system** out);
/* the rulial 2-state 2-color Turing machine */
int zxmw_system_tm(int states, int colors, int include_stay, zxmw_system** out);
/* rules: "g[x_,g[y_,z_]]:>g[g[x_,y_],z_]" (',' separated) */
int zxmw_system_term(const char* rules, zxmw_system** out);
/* enumerated ZX rule schema within the arity bounds; families optionally
 * restricts to a comma-separated list of family names (e.g. "identity,fusion";
 * NULL or "" keeps all) */
int zxmw_system_zx(int max_in, int max_out, const char* families, zxmw_system** out);
void zxmw_system_free(zxmw_system* s);

/* ---- evolution ------------------------------------------------------ */

/* inits are in the system's native state syntax (ZX: operator expression).
 * states_mode: 0 = evolution graph, 1 = states graph. */
int zxmw_evolve(zxmw_system* s, const char* const* inits, int n_inits, int steps,
                int states_mode, long max_states, long max_events, int workers,
                int branchial_window, zxmw_graph** out);
void zxmw_graph_free(zxmw_graph* g);

int zxmw_graph_state_count(const zxmw_graph* g, long* out);
int zxmw_graph_event_count(const zxmw_graph* g, long* out);

int zxmw_graph_multiway_dot(const zxmw_graph* g, char** out);
int zxmw_graph_multiway_json(const zxmw_graph* g, char** out);
int zxmw_graph_causal_dot(const zxmw_graph* g, int transitive_reduction, char** out);
int zxmw_graph_causal_json(const zxmw_graph* g, int transitive_reduction, char** out);
int zxmw_graph_branchial_dot(const zxmw_graph* g, int slice, char** out);
int zxmw_graph_branchial_json(const zxmw_graph* g, int slice, char** out);

/* ---- ZX semantics and rules ----------------------------------------- */

/* matrix of a ZX operator expression as JSON (rows/cols plus row-major
 * [re, im] entries; exact decomposition included for quarter-turn phases) */
int zxmw_semantics_json(const char* zx_expr, char** out);
/* canonical rule enumeration within the arity bounds, as JSON */
int zxmw_rules_json(int max_in, int max_out, char** out);

/* ---- experiments and checks ----------------------------------------- */

/* monoidal-compatibility sweep; sample <= 0 runs the full tier.
 * *all_pass is set to 1 when every instance passes the quotiented test. */
int zxmw_experiment_monoidal_json(int tier, int sample, int steps, unsigned seed,
                                  char** out, int* all_pass);

/* root-NOT multiway toy; *faithful is 1 when every slice amplitude vector
 * equals the exact matrix power of the initial vector. */
int zxmw_quantum_root_not_json(int steps, char** out, int* faithful);

/* kind: "confluence" | "causal-invariance" | "complete-consistent".
 * verdict: 1 pass, 0 fail, -1 inconclusive. complete-consistent applies to
 * binary string systems and uses max_len for the tested string lengths. */
int zxmw_check_json(zxmw_system* s, const char* const* inits, int n_inits,
                    const char* kind, int depth, int max_len, char** out, int* verdict);

/* Knuth-Bendix-style completion over unjoinable branch/root pairs;
 * *connected reports whether the merged states graph at `depth` is connected
 * after completion. */
int zxmw_complete_json(zxmw_system* s, const char* const* inits, int n_inits, int depth,
                       int max_rounds, int oriented, char** out, int* connected);

#ifdef __cplusplus
}
#endif

#endif /* ZXMW_H */

/*
 * C interface to the finite quantum group toolkit. Objects are opaque
 * handles; every call returns a status code. On failure, a human-readable
 * message and (when available) a JSON residual report for the current thread
 * are kept until the next failing call.
 */
#ifndef CQG_H
#define CQG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cqg_status {
  CQG_OK = 0,
  CQG_CHECK_FAILED = 1, /* a semantic check failed (residuals in the report) */
  CQG_PARSE_ERROR = 2,  /* malformed file or arguments */
  CQG_INTERNAL_ERROR = 3
} cqg_status;

typedef struct cqg_group cqg_group;
typedef struct cqg_action cqg_action;

typedef struct cqg_options {
  double tolerance;      /* residual acceptance (default 1e-9) */
  double zero_tolerance; /* semantic-zero threshold (default 1e-7) */
  uint64_t seed;         /* seed for randomized decompositions */
  int enumerate_subsets; /* full 2^n invariant-subset scan when nonzero */
} cqg_options;

void cqg_options_init(cqg_options* opts);

/* Quantum group files (.cqg). Loading re-runs the Hopf verification. */
cqg_status cqg_group_load(const char* path, const cqg_options* opts,
                          cqg_group** out);
cqg_status cqg_group_save(const cqg_group* group, const char* path);
void cqg_group_free(cqg_group* group);

/* Action files (.act) are loaded against a quantum group and re-verified. */
cqg_status cqg_action_load(const cqg_group* group, const char* path,
                           const cqg_options* opts, cqg_action** out);
cqg_status cqg_action_save(const cqg_action* action, const char* path);
void cqg_action_free(cqg_action* action);

/*
 * Built-in example families. `action` may receive NULL for group-only
 * names. Names: "c4" (cyclic translation on 4 points), "dual-d4" (group
 * algebra of the dihedral group of order 8 with the block reflection
 * action), "s3" (natural action on 3 points), "block-reflection-<k>",
 * "identity-<n>" (identity action over the dual of D4).
 */
cqg_status cqg_fixture(const char* name, const cqg_options* opts,
                       cqg_group** group, cqg_action** action);

/*
 * Run a named check and produce a JSON report (free with cqg_string_free).
 * Group-only commands: check-hopf, haar, is-kac, decompose, report.
 * Action commands: check-action, orbits, ergodic, invariant-states,
 * invariant-subsets, supports, faithful, decompose, report.
 * CQG_OK means every semantic check passed; CQG_CHECK_FAILED reports are
 * still written when possible.
 */
cqg_status cqg_run(const cqg_group* group, const cqg_action* action,
                   const char* command, const cqg_options* opts,
                   char** report);

void cqg_string_free(char* text);

const char* cqg_last_error(void);
const char* cqg_last_error_report(void); /* JSON, may be empty */

const char* cqg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CQG_H */

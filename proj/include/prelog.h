/* C interface to the pre-log analysis library. All result-producing calls
 * fill a heap-allocated JSON string that the caller releases with
 * plg_string_free. Error details for the last failing call on a session are
 * available via plg_last_error. */
#ifndef PRELOG_H
#define PRELOG_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plg_status {
  PLG_OK = 0,
  PLG_ERR_RUNTIME = 1, /* verification or construction failure */
  PLG_ERR_INVALID = 2  /* invalid arguments */
} plg_status;

typedef struct plg_session plg_session;

plg_status plg_session_create(plg_session** out);
void plg_session_destroy(plg_session* s);
const char* plg_last_error(const plg_session* s);
void plg_string_free(char* str);
const char* plg_version(void);

/* closed-form pre-log quantities (exact rationals) */
plg_status plg_bounds(plg_session* s, int T, int R, int L, int Q,
                      char** json_out);

/* index-set construction I_r / P_t / D_t plus validation results */
plg_status plg_index_sets(plg_session* s, int T, int R, int L, int Q,
                          char** json_out);

/* finite-to-one exponent: 2^(sum |D_t| + TQR), reported as exponent */
plg_status plg_bezout(plg_session* s, int T, int R, int L, int Q,
                      char** json_out);

/* fraction of random draws with a nonsingular Jacobian; constant_fading
 * forces all coloring blocks equal per draw */
plg_status plg_jacobian_check(plg_session* s, int T, int R, int L, int Q,
                              long long trials, unsigned long long seed,
                              double tol, int constant_fading, char** json_out);

/* explicit nonsingularity witness (Z, x, s) with its certificate */
plg_status plg_witness(plg_session* s, int T, int R, int L, int Q,
                       unsigned long long seed, char** json_out);

/* Monte Carlo estimate of E[log |det J|^2] on a seeded random coloring */
plg_status plg_mc_logdet(plg_session* s, int T, int R, int L, int Q,
                         long long samples, unsigned long long seed, double tol,
                         char** json_out);

/* mutual-information slope vs log-SNR (per symbol), k-NN entropy based */
plg_status plg_mc_mi_slope(plg_session* s, int T, int R, int L, int Q,
                           double snr_start_db, double snr_stop_db,
                           int snr_points, long long samples, int knn_k,
                           unsigned long long seed, char** json_out);

/* growth slope of the conditional output entropy vs log-SNR */
plg_status plg_hyx_growth(plg_session* s, int T, int R, int L, int Q,
                          double snr_start_db, double snr_stop_db,
                          int snr_points, long long samples,
                          unsigned long long seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* PRELOG_H */

/* omegalab.h - public C API of the omegalab shared library.
 *
 * omegalab is a numerical laboratory for the prime-counting remainder
 * P(x) = pi(x) - li(x).  It evaluates the parametric integral
 *
 *     Omega(delta) = int_2^inf (ln x - 2) x^(-3/2-delta) (li(x) - pi(x)) dx,
 *
 * which behaves like 1/delta + O(1) under the Riemann hypothesis, together
 * with the supporting zeta-function identities (Euler-product prime sums,
 * F/G series, singular-part cancellation near s = 1, pole removal at
 * s = 1/2).
 *
 * All entry points operate on an opaque omegalab_lab handle that owns the
 * configuration and the prime cache.  Handles are not thread safe; create
 * one per thread.  Functions return omegalab_status; on failure a
 * human-readable message is available via omegalab_last_error() until the
 * next call on the same handle.
 */
#ifndef OMEGALAB_H
#define OMEGALAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum omegalab_status {
  OMEGALAB_OK = 0,
  OMEGALAB_ERR_INTERNAL = 1,   /* unexpected failure */
  OMEGALAB_ERR_DOMAIN = 2,     /* argument outside the documented domain */
  OMEGALAB_ERR_INFEASIBLE = 3, /* tail target unreachable under the sieve cap */
  OMEGALAB_ERR_IO = 4          /* cache/checkpoint file problem */
} omegalab_status;

typedef struct omegalab_lab omegalab_lab;

const char *omegalab_version(void);

omegalab_lab *omegalab_create(void);
void omegalab_destroy(omegalab_lab *lab);
const char *omegalab_last_error(const omegalab_lab *lab);

/* -------------------------------------------------------------------------
 * Configuration.  Defaults: cap 2^40, threads 1, segment size 2^18 odd
 * entries, von Koch constant 1/(8 pi) (Schoenfeld's explicit RH bound),
 * relative tail target 1e-3, cache dir from OMEGALAB_CACHE_DIR (persistence
 * disabled when unset).
 * ------------------------------------------------------------------------- */
omegalab_status omegalab_set_cap(omegalab_lab *lab, uint64_t x_max_cap);
omegalab_status omegalab_set_threads(omegalab_lab *lab, int32_t threads);
omegalab_status omegalab_set_segment_size(omegalab_lab *lab, uint64_t odd_entries);
omegalab_status omegalab_set_von_koch(omegalab_lab *lab, double c);
omegalab_status omegalab_set_eps(omegalab_lab *lab, double eps_rel);
omegalab_status omegalab_set_cache_dir(omegalab_lab *lab, const char *path);

uint64_t omegalab_get_cap(const omegalab_lab *lab);
int32_t omegalab_get_threads(const omegalab_lab *lab);
uint64_t omegalab_get_segment_size(const omegalab_lab *lab);
double omegalab_get_von_koch(const omegalab_lab *lab);
double omegalab_get_eps(const omegalab_lab *lab);
/* Resolved cache file path ("" when persistence is off).  Returns the
 * length written (excluding NUL). */
size_t omegalab_cache_path(const omegalab_lab *lab, char *buf, size_t bufsz);

/* -------------------------------------------------------------------------
 * Prime pipeline.
 * ------------------------------------------------------------------------- */
omegalab_status omegalab_pi(omegalab_lab *lab, uint64_t x, uint64_t *pi_out);
/* Checkpoint the pipeline resumed from for the last omegalab_pi call
 * (x = 0 when it sieved from scratch). */
void omegalab_pi_provenance(const omegalab_lab *lab, uint64_t *ckpt_x, uint64_t *ckpt_pi);

/* -------------------------------------------------------------------------
 * Special functions (pure; no handle state touched besides errors).
 * ------------------------------------------------------------------------- */
omegalab_status omegalab_ei(omegalab_lab *lab, double y, double *out);
omegalab_status omegalab_li(omegalab_lab *lab, double x, double *out);
double omegalab_constant_k(void); /* li(2) = V.p. int_0^2 dt/ln t */

/* -------------------------------------------------------------------------
 * Omega engine.  x_max <= 0 requests auto truncation: the smallest
 * power-of-two X whose conditional tail bound meets eps_rel/delta; an
 * OMEGALAB_ERR_INFEASIBLE results when no admissible X fits under the cap.
 * ------------------------------------------------------------------------- */
typedef struct omegalab_omega_row {
  double delta;
  double omega;      /* Omega(delta) truncated at x_trunc */
  double scaled;     /* delta * omega */
  double residual;   /* omega - 1/delta */
  double x_trunc;
  double tail_bound; /* RH-conditional truncation bound */
  double eval_err;   /* rounding/series budget */
} omegalab_omega_row;

omegalab_status omegalab_omega(omegalab_lab *lab, double delta, double x_max,
                               omegalab_omega_row *out);
/* One streaming prime pass for every delta; rows are written in descending
 * delta order. */
omegalab_status omegalab_omega_sweep(omegalab_lab *lab, const double *deltas,
                                     size_t n, double x_max,
                                     omegalab_omega_row *rows,
                                     int32_t *sieve_pass_count);
omegalab_status omegalab_tail_bound(omegalab_lab *lab, double x_trunc,
                                    double delta, double *out);
omegalab_status omegalab_required_xmax(omegalab_lab *lab, double delta,
                                       double eps_abs, double *x_out);

typedef struct omegalab_mult_report {
  double product_delta;         /* prod delta_k */
  omegalab_omega_row product_row;
  double factors_product;       /* prod Omega(delta_k) */
  double ratio;                 /* Omega(prod delta_k) / prod Omega(delta_k) */
  double err_budget;            /* propagated tail+eval budget on the ratio */
} omegalab_mult_report;

omegalab_status omegalab_multiplicativity(omegalab_lab *lab,
                                          const double *deltas, size_t n,
                                          double x_max,
                                          omegalab_mult_report *out);

#define OMEGALAB_MAX_FACTORS 15

typedef struct omegalab_factor_entry {
  uint64_t p;
  uint32_t alpha;
  omegalab_omega_row row; /* Omega(1/p) */
} omegalab_factor_entry;

typedef struct omegalab_factorization_report {
  uint64_t n;
  double delta; /* 1/n */
  omegalab_omega_row omega_n;
  omegalab_factor_entry factors[OMEGALAB_MAX_FACTORS];
  size_t n_factors;
  double product; /* prod Omega(1/p_l)^alpha_l */
  double ratio;   /* Omega(1/n) / product */
  double err_budget;
} omegalab_factorization_report;

omegalab_status omegalab_factorization_demo(omegalab_lab *lab, uint64_t n,
                                            double x_max,
                                            omegalab_factorization_report *out);

/* -------------------------------------------------------------------------
 * Zeta identities.
 * ------------------------------------------------------------------------- */
omegalab_status omegalab_zeta(omegalab_lab *lab, double sigma, double t,
                              int32_t terms, double *re, double *im);
/* zeta'(s)/zeta(s) via term-wise Euler-Maclaurin differentiation. */
omegalab_status omegalab_zeta_log_deriv(omegalab_lab *lab, double sigma,
                                        double t, int32_t terms, double *re,
                                        double *im);
/* pi(X) ln(1-X^-s) - sum_{p<=X} ln(1-p^-s)  (exact step integration). */
omegalab_status omegalab_log_zeta_prime_sum(omegalab_lab *lab, double sigma,
                                            double t, double x_max, double *re,
                                            double *im);

typedef struct omegalab_check_report {
  char check_name[48];
  double lhs_re, lhs_im;
  double rhs_re, rhs_im;
  double residual;
  double bound_used;
  int32_t pass;
  char note[192];
} omegalab_check_report;

omegalab_status omegalab_log_zeta_identity_check(omegalab_lab *lab, double sigma, double t,
                                      double x_max,
                                      omegalab_check_report *out);

typedef struct omegalab_singular_row {
  double eps;
  /* (2^-eps - 1)/eps at s = 1+eps, limit -ln 2 */
  double g2_value, g2_error;
  /* zeta'/zeta(1+eps) + 1/eps, limit Euler-Mascheroni gamma */
  double zeta_ratio_value, zeta_ratio_error;
  /* second G-term variants at s = 1/2+eps: exponent 2s-1 (as displayed)
   * versus exponent s-1 (as the subsequent expansion manipulates) */
  double halfpole_display_value, halfpole_display_error;
  double halfpole_expansion_value, halfpole_expansion_error;
} omegalab_singular_row;

omegalab_status omegalab_singular_check(omegalab_lab *lab, const double *eps,
                                        size_t n, omegalab_singular_row *rows);

omegalab_status omegalab_f_series(omegalab_lab *lab, double x, double sigma,
                                  double t, int32_t terms, double *re,
                                  double *im, double *remainder_bound);
omegalab_status omegalab_g_series(omegalab_lab *lab, double sigma, double t,
                                  int32_t terms, double *re, double *im,
                                  double *remainder_bound);

/* int_2^X F(x;sigma) P(x) dx + 1/(2 sigma - 1); f_terms = 0 uses the exact
 * closed form of the F antiderivative, f_terms > 0 truncates the series. */
omegalab_status omegalab_half_pole_residual(omegalab_lab *lab, double sigma,
                                         double x_max, int32_t f_terms,
                                         double *out);
/* correction_out: int_2^X [F - (sigma ln x - 1) x^(-sigma-1)] P(x) dx;
 * log_moment_out: (sigma - 1/2) int_2^X ln x * x^(-1-sigma) P(x) dx. */
omegalab_status omegalab_leading_term_reduction(omegalab_lab *lab, double sigma,
                                                double x_max,
                                                double *correction_out,
                                                double *log_moment_out);

#ifdef __cplusplus
}
#endif

#endif /* OMEGALAB_H */

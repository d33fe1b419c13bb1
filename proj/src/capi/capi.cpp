// extern "C" surface of the omegalab shared library.  All state lives in
// the opaque omegalab_lab handle; core exceptions are translated to status
// codes plus a per-handle message.

#include "omegalab.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "../core/errors.hpp"
#include "../core/kernel_integrals.hpp"
#include "../core/omega_engine.hpp"
#include "../core/primes.hpp"
#include "../core/special_functions.hpp"
#include "../core/zeta_identities.hpp"

namespace {

constexpr const char *kVersion = "1.0.0";

} // namespace

struct omegalab_lab {
  omegalab::SieveConfig sieve_cfg;
  omegalab::OmegaConfig omega_cfg;
  std::unique_ptr<omegalab::PrimePipeline> pipeline;
  std::string last_error;

  omegalab::PrimePipeline &primes() {
    if (!pipeline) {
      pipeline = std::make_unique<omegalab::PrimePipeline>(sieve_cfg);
    }
    return *pipeline;
  }
  void reset_pipeline() { pipeline.reset(); }
};

namespace {

omegalab_status to_status(omegalab::ErrorCode code) {
  switch (code) {
    case omegalab::ErrorCode::domain: return OMEGALAB_ERR_DOMAIN;
    case omegalab::ErrorCode::infeasible: return OMEGALAB_ERR_INFEASIBLE;
    case omegalab::ErrorCode::io: return OMEGALAB_ERR_IO;
    default: return OMEGALAB_ERR_INTERNAL;
  }
}

template <typename Fn>
omegalab_status guarded(omegalab_lab *lab, Fn &&fn) {
  if (!lab) return OMEGALAB_ERR_DOMAIN;
  lab->last_error.clear();
  try {
    fn();
    return OMEGALAB_OK;
  } catch (const omegalab::Error &e) {
    lab->last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception &e) {
    lab->last_error = e.what();
    return OMEGALAB_ERR_INTERNAL;
  }
}

omegalab_omega_row to_row(const omegalab::OmegaResult &r) {
  return {r.delta, r.omega, r.scaled, r.residual, r.x_trunc, r.tail_bound,
          r.eval_err};
}

void copy_str(char *dst, size_t cap, const std::string &src) {
  const size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

} // namespace

extern "C" {

const char *omegalab_version(void) { return kVersion; }

omegalab_lab *omegalab_create(void) {
  try {
    return new omegalab_lab();
  } catch (...) {
    return nullptr;
  }
}

void omegalab_destroy(omegalab_lab *lab) { delete lab; }

const char *omegalab_last_error(const omegalab_lab *lab) {
  return lab ? lab->last_error.c_str() : "null handle";
}

omegalab_status omegalab_set_cap(omegalab_lab *lab, uint64_t x_max_cap) {
  return guarded(lab, [&] {
    if (x_max_cap < 8 || x_max_cap > omegalab::kHardCap) {
      omegalab::throw_domain("cap must lie in [8, 2^40]");
    }
    lab->sieve_cfg.x_max_cap = x_max_cap;
    lab->reset_pipeline();
  });
}

omegalab_status omegalab_set_threads(omegalab_lab *lab, int32_t threads) {
  return guarded(lab, [&] {
    if (threads < 1 || threads > 256) {
      omegalab::throw_domain("threads must lie in [1, 256]");
    }
    lab->sieve_cfg.threads = threads;
    if (lab->pipeline) lab->pipeline->set_threads(threads);
  });
}

omegalab_status omegalab_set_segment_size(omegalab_lab *lab,
                                          uint64_t odd_entries) {
  return guarded(lab, [&] {
    if (odd_entries < 64 || odd_entries > (1ull << 26)) {
      omegalab::throw_domain("segment size must lie in [2^6, 2^26] odd entries");
    }
    lab->sieve_cfg.segment_odds = odd_entries;
    lab->reset_pipeline();
  });
}

omegalab_status omegalab_set_von_koch(omegalab_lab *lab, double c) {
  return guarded(lab, [&] {
    if (!(c > 0.0)) omegalab::throw_domain("von Koch constant must be positive");
    lab->omega_cfg.von_koch_const = c;
  });
}

omegalab_status omegalab_set_eps(omegalab_lab *lab, double eps_rel) {
  return guarded(lab, [&] {
    if (!(eps_rel > 0.0)) omegalab::throw_domain("eps must be positive");
    lab->omega_cfg.eps_rel = eps_rel;
  });
}

omegalab_status omegalab_set_cache_dir(omegalab_lab *lab, const char *path) {
  return guarded(lab, [&] {
    if (path) {
      lab->sieve_cfg.cache_dir = std::string(path);
    } else {
      lab->sieve_cfg.cache_dir = std::string(); // empty string disables
    }
    lab->reset_pipeline();
  });
}

uint64_t omegalab_get_cap(const omegalab_lab *lab) {
  return lab ? lab->sieve_cfg.x_max_cap : 0;
}
int32_t omegalab_get_threads(const omegalab_lab *lab) {
  return lab ? lab->sieve_cfg.threads : 0;
}
uint64_t omegalab_get_segment_size(const omegalab_lab *lab) {
  return lab ? lab->sieve_cfg.segment_odds : 0;
}
double omegalab_get_von_koch(const omegalab_lab *lab) {
  return lab ? lab->omega_cfg.von_koch_const : 0.0;
}
double omegalab_get_eps(const omegalab_lab *lab) {
  return lab ? lab->omega_cfg.eps_rel : 0.0;
}

size_t omegalab_cache_path(const omegalab_lab *lab, char *buf, size_t bufsz) {
  if (!lab || !buf || bufsz == 0) return 0;
  try {
    omegalab::PrimePipeline probe(lab->sieve_cfg);
    const std::string path = probe.cache_file_path();
    copy_str(buf, bufsz, path);
    return std::min(bufsz - 1, path.size());
  } catch (...) {
    buf[0] = '\0';
    return 0;
  }
}

omegalab_status omegalab_pi(omegalab_lab *lab, uint64_t x, uint64_t *pi_out) {
  return guarded(lab, [&] {
    if (!pi_out) omegalab::throw_domain("null output pointer");
    *pi_out = lab->primes().pi(x);
  });
}

void omegalab_pi_provenance(const omegalab_lab *lab, uint64_t *ckpt_x,
                            uint64_t *ckpt_pi) {
  uint64_t x = 0, pi = 0;
  if (lab && lab->pipeline) {
    auto [rx, rpi] = lab->pipeline->last_resume();
    x = rx;
    pi = rpi;
  }
  if (ckpt_x) *ckpt_x = x;
  if (ckpt_pi) *ckpt_pi = pi;
}

omegalab_status omegalab_ei(omegalab_lab *lab, double y, double *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    *out = omegalab::exp_integral_ei(y);
  });
}

omegalab_status omegalab_li(omegalab_lab *lab, double x, double *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    *out = omegalab::li(x);
  });
}

double omegalab_constant_k(void) { return omegalab::constant_K(); }

omegalab_status omegalab_omega(omegalab_lab *lab, double delta, double x_max,
                               omegalab_omega_row *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    omegalab::OmegaEngine engine(lab->primes(), lab->omega_cfg);
    *out = to_row(engine.omega(delta, x_max));
  });
}

omegalab_status omegalab_omega_sweep(omegalab_lab *lab, const double *deltas,
                                     size_t n, double x_max,
                                     omegalab_omega_row *rows,
                                     int32_t *sieve_pass_count) {
  return guarded(lab, [&] {
    if (!deltas || !rows || n == 0) {
      omegalab::throw_domain("sweep needs deltas and an output buffer");
    }
    omegalab::OmegaEngine engine(lab->primes(), lab->omega_cfg);
    omegalab::SweepTable table = engine.sweep({deltas, n}, x_max);
    for (size_t i = 0; i < n; ++i) rows[i] = to_row(table.rows[i]);
    if (sieve_pass_count) *sieve_pass_count = table.sieve_pass_count;
  });
}

omegalab_status omegalab_tail_bound(omegalab_lab *lab, double x_trunc,
                                    double delta, double *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    *out = omegalab::tail_bound(x_trunc, omegalab::KernelParams::make(delta),
                                lab->omega_cfg.von_koch_const);
  });
}

omegalab_status omegalab_required_xmax(omegalab_lab *lab, double delta,
                                       double eps_abs, double *x_out) {
  return guarded(lab, [&] {
    if (!x_out) omegalab::throw_domain("null output pointer");
    *x_out = omegalab::required_xmax(omegalab::KernelParams::make(delta),
                                     eps_abs, lab->omega_cfg.von_koch_const,
                                     lab->sieve_cfg.x_max_cap);
  });
}

omegalab_status omegalab_multiplicativity(omegalab_lab *lab,
                                          const double *deltas, size_t n,
                                          double x_max,
                                          omegalab_mult_report *out) {
  return guarded(lab, [&] {
    if (!deltas || !out || n == 0) {
      omegalab::throw_domain("mult needs deltas and an output buffer");
    }
    omegalab::OmegaEngine engine(lab->primes(), lab->omega_cfg);
    omegalab::MultReport rep = engine.multiplicativity({deltas, n}, x_max);
    out->product_delta = rep.product_delta;
    out->product_row = to_row(rep.product_row);
    out->factors_product = rep.factors_product;
    out->ratio = rep.ratio;
    out->err_budget = rep.err_budget;
  });
}

omegalab_status omegalab_factorization_demo(omegalab_lab *lab, uint64_t n,
                                            double x_max,
                                            omegalab_factorization_report *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    omegalab::OmegaEngine engine(lab->primes(), lab->omega_cfg);
    omegalab::FactorizationReport rep = engine.factorization_demo(n, x_max);
    if (rep.factors.size() > OMEGALAB_MAX_FACTORS) {
      omegalab::throw_domain("factor list exceeds report capacity");
    }
    out->n = rep.n;
    out->delta = rep.delta;
    out->omega_n = to_row(rep.omega_n);
    out->n_factors = rep.factors.size();
    for (size_t i = 0; i < rep.factors.size(); ++i) {
      out->factors[i].p = rep.factors[i].p;
      out->factors[i].alpha = rep.factors[i].alpha;
      out->factors[i].row = to_row(rep.factors[i].row);
    }
    out->product = rep.product;
    out->ratio = rep.ratio;
    out->err_budget = rep.err_budget;
  });
}

omegalab_status omegalab_zeta(omegalab_lab *lab, double sigma, double t,
                              int32_t terms, double *re, double *im) {
  return guarded(lab, [&] {
    if (!re || !im) omegalab::throw_domain("null output pointer");
    const omegalab::Complex z = omegalab::zeta_em({sigma, t}, terms);
    *re = z.real();
    *im = z.imag();
  });
}

omegalab_status omegalab_zeta_log_deriv(omegalab_lab *lab, double sigma,
                                        double t, int32_t terms, double *re,
                                        double *im) {
  return guarded(lab, [&] {
    if (!re || !im) omegalab::throw_domain("null output pointer");
    const omegalab::Complex z = omegalab::zeta_log_derivative({sigma, t}, terms);
    *re = z.real();
    *im = z.imag();
  });
}

omegalab_status omegalab_log_zeta_prime_sum(omegalab_lab *lab, double sigma,
                                            double t, double x_max, double *re,
                                            double *im) {
  return guarded(lab, [&] {
    if (!re || !im) omegalab::throw_domain("null output pointer");
    const omegalab::Complex z =
        omegalab::log_zeta_prime_sum({sigma, t}, x_max, lab->primes());
    *re = z.real();
    *im = z.imag();
  });
}

omegalab_status omegalab_log_zeta_identity_check(omegalab_lab *lab, double sigma, double t,
                                      double x_max,
                                      omegalab_check_report *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    omegalab::CheckReport rep =
        omegalab::log_zeta_identity_check({sigma, t}, x_max, lab->primes());
    copy_str(out->check_name, sizeof out->check_name, rep.check_name);
    out->lhs_re = rep.lhs.real();
    out->lhs_im = rep.lhs.imag();
    out->rhs_re = rep.rhs.real();
    out->rhs_im = rep.rhs.imag();
    out->residual = rep.residual;
    out->bound_used = rep.bound_used;
    out->pass = rep.pass ? 1 : 0;
    copy_str(out->note, sizeof out->note, rep.note);
  });
}

omegalab_status omegalab_singular_check(omegalab_lab *lab, const double *eps,
                                        size_t n, omegalab_singular_row *rows) {
  return guarded(lab, [&] {
    if (!eps || !rows || n == 0) {
      omegalab::throw_domain("singular check needs an eps grid and buffer");
    }
    const std::vector<omegalab::SingularRow> got =
        omegalab::singular_cancellation_check({eps, n});
    for (size_t i = 0; i < n; ++i) {
      rows[i] = {got[i].eps,
                 got[i].g2_value,
                 got[i].g2_error,
                 got[i].zeta_ratio_value,
                 got[i].zeta_ratio_error,
                 got[i].halfpole_display_value,
                 got[i].halfpole_display_error,
                 got[i].halfpole_expansion_value,
                 got[i].halfpole_expansion_error};
    }
  });
}

omegalab_status omegalab_f_series(omegalab_lab *lab, double x, double sigma,
                                  double t, int32_t terms, double *re,
                                  double *im, double *remainder_bound) {
  return guarded(lab, [&] {
    if (!re || !im) omegalab::throw_domain("null output pointer");
    omegalab::SeriesTruncation trunc;
    const omegalab::Complex z = omegalab::F_series(x, {sigma, t}, terms, &trunc);
    *re = z.real();
    *im = z.imag();
    if (remainder_bound) *remainder_bound = trunc.remainder_bound;
  });
}

omegalab_status omegalab_g_series(omegalab_lab *lab, double sigma, double t,
                                  int32_t terms, double *re, double *im,
                                  double *remainder_bound) {
  return guarded(lab, [&] {
    if (!re || !im) omegalab::throw_domain("null output pointer");
    omegalab::SeriesTruncation trunc;
    const omegalab::Complex z = omegalab::G_series({sigma, t}, terms, &trunc);
    *re = z.real();
    *im = z.imag();
    if (remainder_bound) *remainder_bound = trunc.remainder_bound;
  });
}

omegalab_status omegalab_half_pole_residual(omegalab_lab *lab, double sigma,
                                         double x_max, int32_t f_terms,
                                         double *out) {
  return guarded(lab, [&] {
    if (!out) omegalab::throw_domain("null output pointer");
    *out = omegalab::half_pole_residual(sigma, x_max, f_terms, lab->primes());
  });
}

omegalab_status omegalab_leading_term_reduction(omegalab_lab *lab, double sigma,
                                                double x_max,
                                                double *correction_out,
                                                double *log_moment_out) {
  return guarded(lab, [&] {
    omegalab::LeadingTermResult res =
        omegalab::leading_term_reduction(sigma, x_max, lab->primes());
    if (correction_out) *correction_out = res.correction;
    if (log_moment_out) *log_moment_out = res.log_moment;
  });
}

} // extern "C"

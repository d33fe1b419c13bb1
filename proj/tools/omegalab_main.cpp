// omegalab command-line front end.  Talks to the shared library exclusively
// through the public C API; formats CSV/JSON reports with full provenance.
//
// Exit codes: 0 success, 2 argument/domain error, 3 feasibility error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omegalab.h"

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int status_to_exit(omegalab_status st) {
  switch (st) {
    case OMEGALAB_OK: return 0;
    case OMEGALAB_ERR_DOMAIN: return 2;
    case OMEGALAB_ERR_INFEASIBLE: return 3;
    case OMEGALAB_ERR_IO: return 4;
    default: return 1;
  }
}

struct FileConfig {
  std::optional<uint64_t> cap;
  std::optional<int> threads;
  std::optional<uint64_t> segment_size;
  std::optional<double> von_koch;
  std::optional<double> eps;
  std::optional<std::string> cache_dir;
  std::optional<std::string> output_format;
  std::vector<double> delta_grid;
};

std::string trim(const std::string &s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

FileConfig load_config_file(const std::string &path) {
  FileConfig cfg;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "x_max_cap") cfg.cap = std::stoull(value);
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "segment_size") cfg.segment_size = std::stoull(value);
    else if (key == "von_koch_const") cfg.von_koch = std::stod(value);
    else if (key == "eps") cfg.eps = std::stod(value);
    else if (key == "cache_dir") cfg.cache_dir = value;
    else if (key == "output_format") cfg.output_format = value;
    else if (key == "delta_grid") cfg.delta_grid = parse_double_list(value);
  }
  return cfg;
}

class Lab {
public:
  Lab() : lab_(omegalab_create()) {}
  ~Lab() { omegalab_destroy(lab_); }
  Lab(const Lab &) = delete;
  Lab &operator=(const Lab &) = delete;
  omegalab_lab *get() { return lab_; }

  int fail(omegalab_status st) const {
    std::cerr << "omegalab: " << omegalab_last_error(lab_) << "\n";
    return status_to_exit(st);
  }

private:
  omegalab_lab *lab_;
};

json provenance(omegalab_lab *lab) {
  return json{{"code_version", omegalab_version()},
              {"von_koch_const", omegalab_get_von_koch(lab)},
              {"eps", omegalab_get_eps(lab)},
              {"sieve_cap", omegalab_get_cap(lab)},
              {"threads", omegalab_get_threads(lab)},
              {"segment_size", omegalab_get_segment_size(lab)}};
}

json row_to_json(const omegalab_omega_row &r) {
  return json{{"delta", r.delta},         {"omega", r.omega},
              {"scaled", r.scaled},       {"residual", r.residual},
              {"x_trunc", r.x_trunc},     {"tail_bound", r.tail_bound},
              {"eval_err", r.eval_err}};
}

constexpr const char *kCsvHeader =
    "delta,omega,scaled,residual,x_trunc,tail_bound,eval_err";

void print_rows_csv(const std::vector<omegalab_omega_row> &rows) {
  std::cout << kCsvHeader << "\n";
  for (const auto &r : rows) {
    std::cout << fmt17(r.delta) << ',' << fmt17(r.omega) << ','
              << fmt17(r.scaled) << ',' << fmt17(r.residual) << ','
              << fmt17(r.x_trunc) << ',' << fmt17(r.tail_bound) << ','
              << fmt17(r.eval_err) << "\n";
  }
}

void print_rows(omegalab_lab *lab, const std::vector<omegalab_omega_row> &rows,
                const std::string &format, int pass_count) {
  if (format == "json") {
    json doc;
    doc["provenance"] = provenance(lab);
    doc["sieve_pass_count"] = pass_count;
    doc["rows"] = json::array();
    for (const auto &r : rows) doc["rows"].push_back(row_to_json(r));
    std::cout << doc.dump(2) << "\n";
  } else {
    print_rows_csv(rows);
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"numerical laboratory for the prime-counting remainder "
               "integral Omega(delta)"};
  app.fallthrough();

  std::string config_path;
  std::optional<int> opt_threads;
  std::optional<uint64_t> opt_cap, opt_segment;
  std::optional<double> opt_von_koch, opt_eps;
  std::optional<std::string> opt_cache_dir, opt_format;

  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--threads", opt_threads, "worker threads (1 = serial)");
  app.add_option("--cap", opt_cap, "sieve cap (<= 2^40)");
  app.add_option("--segment-size", opt_segment, "sieve segment size (odd entries)");
  app.add_option("--von-koch", opt_von_koch, "constant C in |P(x)| <= C sqrt(x) ln x");
  app.add_option("--eps", opt_eps, "relative tail target for auto truncation");
  app.add_option("--cache-dir", opt_cache_dir, "checkpoint cache directory");
  app.add_option("--format", opt_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // pi
  auto *cmd_pi = app.add_subcommand("pi", "exact prime count pi(x)");
  uint64_t pi_x = 0;
  cmd_pi->add_option("--x", pi_x, "evaluation point")->required();

  // omega
  auto *cmd_omega = app.add_subcommand("omega", "one Omega(delta) row");
  double omega_delta = 0.0, omega_xmax = 0.0;
  cmd_omega->add_option("--delta", omega_delta)->required();
  cmd_omega->add_option("--xmax", omega_xmax, "truncation point (omit for auto)");

  // sweep
  auto *cmd_sweep = app.add_subcommand("sweep", "Omega rows for a delta grid");
  std::vector<double> sweep_deltas;
  double sweep_xmax = 0.0;
  cmd_sweep->add_option("--deltas", sweep_deltas, "comma separated deltas")
      ->delimiter(',');
  cmd_sweep->add_option("--xmax", sweep_xmax, "truncation point (omit for auto)");

  // mult
  auto *cmd_mult = app.add_subcommand("mult", "asymptotic multiplicativity ratio");
  std::vector<double> mult_deltas;
  double mult_xmax = 0.0;
  cmd_mult->add_option("--deltas", mult_deltas)->delimiter(',')->required();
  cmd_mult->add_option("--xmax", mult_xmax, "truncation point (omit for auto)");

  // factor
  auto *cmd_factor = app.add_subcommand(
      "factor", "compare Omega(1/n) with the factor product");
  uint64_t factor_n = 0;
  double factor_xmax = 0.0;
  cmd_factor->add_option("--n", factor_n)->required();
  cmd_factor->add_option("--xmax", factor_xmax, "truncation point (omit for auto)");

  // zeta-check
  auto *cmd_zeta = app.add_subcommand(
      "zeta-check", "Euler-product prime sum and the ln zeta integral identity");
  double zc_sigma = 2.0, zc_t = 0.0, zc_xmax = 1e6;
  int zc_terms = 64;
  cmd_zeta->add_option("--sigma", zc_sigma)->required();
  cmd_zeta->add_option("--t", zc_t);
  cmd_zeta->add_option("--xmax", zc_xmax);
  cmd_zeta->add_option("--terms", zc_terms);

  // lemma-check
  auto *cmd_lemma = app.add_subcommand(
      "lemma-check", "pole removal at sigma = 1/2 and the leading-term reduction");
  double lc_sigma = 0.75, lc_xmax = 1e6;
  int lc_terms = 0;
  cmd_lemma->add_option("--sigma", lc_sigma)->required();
  cmd_lemma->add_option("--xmax", lc_xmax);
  cmd_lemma->add_option("--terms", lc_terms, "F series terms (0 = closed form)");

  // singular-check
  auto *cmd_sing = app.add_subcommand(
      "singular-check", "cancellation of the singular parts near s = 1");
  std::vector<double> sing_eps{1e-2, 1e-3, 1e-4};
  cmd_sing->add_option("--eps-grid", sing_eps)->delimiter(',');

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  FileConfig file_cfg;
  if (!config_path.empty()) {
    try {
      file_cfg = load_config_file(config_path);
    } catch (const std::exception &e) {
      std::cerr << "omegalab: " << e.what() << "\n";
      return 2;
    }
  }

  // precedence: flag > environment > config file > built-in default
  const char *env_threads = std::getenv("OMEGALAB_THREADS");
  const char *env_cache = std::getenv("OMEGALAB_CACHE_DIR");
  std::optional<int> threads = opt_threads;
  if (!threads && env_threads) threads = std::atoi(env_threads);
  if (!threads) threads = file_cfg.threads;
  std::optional<std::string> cache_dir = opt_cache_dir;
  if (!cache_dir && !env_cache) cache_dir = file_cfg.cache_dir;
  std::optional<uint64_t> cap = opt_cap ? opt_cap : file_cfg.cap;
  std::optional<uint64_t> segment = opt_segment ? opt_segment : file_cfg.segment_size;
  std::optional<double> von_koch = opt_von_koch ? opt_von_koch : file_cfg.von_koch;
  std::optional<double> eps = opt_eps ? opt_eps : file_cfg.eps;
  std::string format = opt_format.value_or(file_cfg.output_format.value_or("csv"));

  Lab lab;
  if (!lab.get()) {
    std::cerr << "omegalab: out of memory\n";
    return 1;
  }
  omegalab_status st = OMEGALAB_OK;
  auto apply = [&](omegalab_status s) {
    if (st == OMEGALAB_OK) st = s;
  };
  if (threads) apply(omegalab_set_threads(lab.get(), *threads));
  if (cap) apply(omegalab_set_cap(lab.get(), *cap));
  if (segment) apply(omegalab_set_segment_size(lab.get(), *segment));
  if (von_koch) apply(omegalab_set_von_koch(lab.get(), *von_koch));
  if (eps) apply(omegalab_set_eps(lab.get(), *eps));
  if (cache_dir) apply(omegalab_set_cache_dir(lab.get(), cache_dir->c_str()));
  if (st != OMEGALAB_OK) return lab.fail(st);

  if (*cmd_pi) {
    uint64_t value = 0;
    st = omegalab_pi(lab.get(), pi_x, &value);
    if (st != OMEGALAB_OK) return lab.fail(st);
    uint64_t ck_x = 0, ck_pi = 0;
    omegalab_pi_provenance(lab.get(), &ck_x, &ck_pi);
    char cache[512];
    omegalab_cache_path(lab.get(), cache, sizeof cache);
    if (format == "json") {
      json doc{{"x", pi_x},
               {"pi", value},
               {"provenance", provenance(lab.get())}};
      doc["provenance"]["resumed_from_x"] = ck_x;
      doc["provenance"]["resumed_from_pi"] = ck_pi;
      doc["provenance"]["cache_file"] = cache;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << value << "\n";
      if (ck_x != 0) {
        std::cout << "# checkpoint: resumed from x=" << ck_x << " pi=" << ck_pi
                  << "\n";
      } else {
        std::cout << "# checkpoint: none (sieved from 2)\n";
      }
      if (cache[0] != '\0') std::cout << "# cache: " << cache << "\n";
    }
    return 0;
  }

  if (*cmd_omega) {
    omegalab_omega_row row;
    st = omegalab_omega(lab.get(), omega_delta,
                        cmd_omega->count("--xmax") ? omega_xmax : 0.0, &row);
    if (st != OMEGALAB_OK) return lab.fail(st);
    print_rows(lab.get(), {row}, format, 1);
    return 0;
  }

  if (*cmd_sweep) {
    std::vector<double> deltas =
        sweep_deltas.empty() ? file_cfg.delta_grid : sweep_deltas;
    if (deltas.empty()) {
      std::cerr << "omegalab: sweep needs --deltas or a delta_grid config\n";
      return 2;
    }
    std::vector<omegalab_omega_row> rows(deltas.size());
    int32_t passes = 0;
    st = omegalab_omega_sweep(lab.get(), deltas.data(), deltas.size(),
                              cmd_sweep->count("--xmax") ? sweep_xmax : 0.0,
                              rows.data(), &passes);
    if (st != OMEGALAB_OK) return lab.fail(st);
    print_rows(lab.get(), rows, format, passes);
    return 0;
  }

  if (*cmd_mult) {
    omegalab_mult_report rep;
    st = omegalab_multiplicativity(lab.get(), mult_deltas.data(),
                                   mult_deltas.size(),
                                   cmd_mult->count("--xmax") ? mult_xmax : 0.0,
                                   &rep);
    if (st != OMEGALAB_OK) return lab.fail(st);
    json doc{{"check_name", "asymptotic_multiplicativity"},
             {"inputs", {{"deltas", mult_deltas}, {"x_max", mult_xmax}}},
             {"product_delta", rep.product_delta},
             {"product_row", row_to_json(rep.product_row)},
             {"factors_product", rep.factors_product},
             {"ratio", rep.ratio},
             {"err_budget", rep.err_budget},
             {"provenance", provenance(lab.get())}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  if (*cmd_factor) {
    omegalab_factorization_report rep;
    st = omegalab_factorization_demo(
        lab.get(), factor_n, cmd_factor->count("--xmax") ? factor_xmax : 0.0,
        &rep);
    if (st != OMEGALAB_OK) return lab.fail(st);
    json factors = json::array();
    for (size_t i = 0; i < rep.n_factors; ++i) {
      json f{{"p", rep.factors[i].p},
             {"alpha", rep.factors[i].alpha},
             {"row", row_to_json(rep.factors[i].row)}};
      factors.push_back(std::move(f));
    }
    json doc{{"check_name", "factorization_demo"},
             {"inputs", {{"n", rep.n}, {"x_max", factor_xmax}}},
             {"delta", rep.delta},
             {"omega_n", row_to_json(rep.omega_n)},
             {"factors", factors},
             {"product", rep.product},
             {"ratio", rep.ratio},
             {"err_budget", rep.err_budget},
             {"provenance", provenance(lab.get())}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  if (*cmd_zeta) {
    double ps_re = 0, ps_im = 0;
    st = omegalab_log_zeta_prime_sum(lab.get(), zc_sigma, zc_t, zc_xmax,
                                     &ps_re, &ps_im);
    if (st != OMEGALAB_OK) return lab.fail(st);
    double z_re = 0, z_im = 0;
    st = omegalab_zeta(lab.get(), zc_sigma, zc_t, zc_terms, &z_re, &z_im);
    if (st != OMEGALAB_OK) return lab.fail(st);
    const std::complex<double> lz = std::log(std::complex<double>(z_re, z_im));
    const double ep_residual =
        std::abs(std::complex<double>(ps_re, ps_im) - lz);
    // crude truncation estimate for the Euler-product tail
    const double ep_bound = 3.0 * std::pow(zc_xmax, 1.0 - zc_sigma) /
                            ((zc_sigma - 1.0) * std::log(zc_xmax));
    omegalab_check_report lem;
    st = omegalab_log_zeta_identity_check(lab.get(), zc_sigma, zc_t, zc_xmax, &lem);
    if (st != OMEGALAB_OK) return lab.fail(st);

    json doc = json::array();
    json ep{{"check_name", "euler_product_prime_sum"},
            {"inputs", {{"sigma", zc_sigma}, {"t", zc_t}, {"x_max", zc_xmax}}},
            {"lhs", {{"re", ps_re}, {"im", ps_im}}},
            {"rhs", {{"re", lz.real()}, {"im", lz.imag()}}},
            {"residual", ep_residual},
            {"bound_used", ep_bound},
            {"pass", ep_residual <= std::max(1e-6, ep_bound)}};
    doc.push_back(std::move(ep));
    json l1{{"check_name", lem.check_name},
            {"inputs", {{"sigma", zc_sigma}, {"t", zc_t}, {"x_max", zc_xmax}}},
            {"lhs", {{"re", lem.lhs_re}, {"im", lem.lhs_im}}},
            {"rhs", {{"re", lem.rhs_re}, {"im", lem.rhs_im}}},
            {"residual", lem.residual},
            {"bound_used", lem.bound_used},
            {"pass", lem.pass != 0},
            {"note", lem.note}};
    doc.push_back(std::move(l1));
    json out{{"checks", doc}, {"provenance", provenance(lab.get())}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_lemma) {
    double residual = 0;
    st = omegalab_half_pole_residual(lab.get(), lc_sigma, lc_xmax, lc_terms,
                                  &residual);
    if (st != OMEGALAB_OK) return lab.fail(st);
    double correction = 0, log_moment = 0;
    st = omegalab_leading_term_reduction(lab.get(), lc_sigma, lc_xmax,
                                         &correction, &log_moment);
    if (st != OMEGALAB_OK) return lab.fail(st);
    const double pole = 1.0 / (2.0 * lc_sigma - 1.0);
    json doc{
        {"check_name", "half_pole_removal"},
        {"inputs",
         {{"sigma", lc_sigma}, {"x_max", lc_xmax}, {"f_terms", lc_terms}}},
        {"lhs", residual - pole}, // the truncated F*P integral itself
        {"rhs", -pole},
        {"residual", residual},
        {"bound_used", std::abs(pole)},
        {"pass", std::abs(residual) < std::abs(pole)},
        {"leading_term_correction", correction},
        {"log_moment", log_moment},
        {"provenance", provenance(lab.get())}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  if (*cmd_sing) {
    std::vector<omegalab_singular_row> rows(sing_eps.size());
    st = omegalab_singular_check(lab.get(), sing_eps.data(), sing_eps.size(),
                                 rows.data());
    if (st != OMEGALAB_OK) return lab.fail(st);
    json checks = json::array();
    for (const auto &r : rows) {
      const bool pass = r.g2_error <= std::max(1e-3, r.eps) &&
                        r.zeta_ratio_error <= std::max(1e-2, 3.0 * r.eps);
      const char *matching =
          r.halfpole_display_error <= r.halfpole_expansion_error
              ? "exponent 2s-1 (displayed form)"
              : "exponent s-1 (expansion form)";
      json row{{"check_name", "singular_cancellation"},
               {"inputs", {{"eps", r.eps}}},
               {"lhs", r.g2_value},
               {"rhs", -0.69314718055994531},
               {"residual", r.g2_error},
               {"bound_used", std::max(1e-3, r.eps)},
               {"pass", pass},
               {"zeta_ratio",
                {{"value", r.zeta_ratio_value}, {"error", r.zeta_ratio_error}}},
               {"half_pole",
                {{"display_value", r.halfpole_display_value},
                 {"display_error", r.halfpole_display_error},
                 {"expansion_value", r.halfpole_expansion_value},
                 {"expansion_error", r.halfpole_expansion_error},
                 {"matching_variant", matching}}}};
      checks.push_back(std::move(row));
    }
    json out{{"checks", checks}, {"provenance", provenance(lab.get())}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  return 2;
}

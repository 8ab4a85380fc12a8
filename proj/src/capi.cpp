#include "prelog.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <nlohmann/json.hpp>
#include <string>

#include "prelog/bounds.hpp"
#include "prelog/index_sets.hpp"
#include "prelog/jacobian.hpp"
#include "prelog/montecarlo.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// stream tag reserving the coloring-matrix draw apart from per-sample streams
constexpr std::uint64_t kColoringStream = 0xC010BB11DD55EE77ULL;

json dims_json(const prelog::Dims& d) {
  return json{{"T", d.T}, {"R", d.R}, {"L", d.L}, {"Q", d.Q}};
}

json rat_json(const prelog::Rat& r) { return prelog::rat_str(r); }

json cplx_json(const prelog::cplx& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(cplx_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(cplx_json(v(i)));
  return out;
}

json report_header(const char* subcommand, const prelog::Dims& d,
                   std::uint64_t seed) {
  return json{{"tool_version", kVersion},
              {"subcommand", subcommand},
              {"dims", dims_json(d)},
              {"seed", seed}};
}

}  // namespace

struct plg_session {
  std::string last_error;
};

extern "C" {

plg_status plg_session_create(plg_session** out) {
  if (!out) return PLG_ERR_INVALID;
  *out = new (std::nothrow) plg_session();
  return *out ? PLG_OK : PLG_ERR_RUNTIME;
}

void plg_session_destroy(plg_session* s) { delete s; }

const char* plg_last_error(const plg_session* s) {
  return s ? s->last_error.c_str() : "";
}

void plg_string_free(char* str) { std::free(str); }

const char* plg_version(void) { return kVersion; }

}  // extern "C"

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
plg_status run_guarded(plg_session* s, char** json_out, Fn&& fn) {
  if (!s || !json_out) return PLG_ERR_INVALID;
  *json_out = nullptr;
  try {
    const json rep = fn();
    *json_out = dup_string(rep.dump(2));
    if (!*json_out) {
      s->last_error = "allocation failure";
      return PLG_ERR_RUNTIME;
    }
    s->last_error.clear();
    return PLG_OK;
  } catch (const std::invalid_argument& e) {
    s->last_error = e.what();
    return PLG_ERR_INVALID;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return PLG_ERR_RUNTIME;
  }
}

}  // namespace

extern "C" {

plg_status plg_bounds(plg_session* s, int T, int R, int L, int Q,
                      char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    d.validate();
    const prelog::PrelogReport rep = prelog::prelog_report(d);
    json j = report_header("bounds", d, 0);
    json table = json::array();
    for (const auto& [t, chi] : rep.chi_low_per_T) {
      table.push_back({{"T", t},
                       {"chi_low", rat_json(chi)},
                       {"chi_low_float", prelog::rat_double(chi)},
                       {"chi_low_clamped",
                        rat_json(std::max(chi, prelog::Rat(0)))}});
    }
    j["table"] = table;
    j["t_opt"] = rat_json(rep.t_opt);
    j["t_opt_float"] = prelog::rat_double(rep.t_opt);
    j["eta"] = rat_json(rep.eta);
    j["eta_float"] = prelog::rat_double(rep.eta);
    j["chi_star"] = rat_json(rep.chi_star);
    j["chi_star_float"] = prelog::rat_double(rep.chi_star);
    j["chi_star_clamped"] = rat_json(rep.chi_star_clamped);
    j["m_star"] = rep.m_star;
    j["zheng_tse"] = rat_json(rep.zheng_tse);
    j["zheng_tse_float"] = prelog::rat_double(rep.zheng_tse);
    j["best_T"] = rep.best_T;
    j["best_chi"] = rat_json(rep.best_chi);
    j["best_chi_float"] = prelog::rat_double(rep.best_chi);
    return j;
  });
}

plg_status plg_index_sets(plg_session* s, int T, int R, int L, int Q,
                          char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::IndexSelection sel = prelog::build_selection(d);
    const prelog::ValidationReport val = prelog::validate_selection(d, sel);
    json j = report_header("index-sets", d, 0);
    j["theta"] = sel.theta;
    j["k"] = sel.k;
    j["ell"] = sel.ell;
    j["I"] = sel.I;
    j["P"] = sel.P;
    j["D"] = sel.D;
    json checks = json::array();
    for (const auto& c : val.checks)
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["validation"] = {{"checks", checks}, {"all_pass", val.all_pass}};
    return j;
  });
}

plg_status plg_bezout(plg_session* s, int T, int R, int L, int Q,
                      char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::IndexSelection sel = prelog::build_selection(d);
    json j = report_header("bezout", d, 0);
    j["exponent"] = prelog::bezout_exponent(d, sel);
    j["note"] = "preimage count bound is 2^exponent";
    return j;
  });
}

plg_status plg_jacobian_check(plg_session* s, int T, int R, int L, int Q,
                              long long trials, unsigned long long seed,
                              double tol, int constant_fading,
                              char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::IndexSelection sel = prelog::build_selection(d);
    const double frac = prelog::genericity_trial(d, sel, trials, seed, tol,
                                                 constant_fading != 0);
    json j = report_header("jacobian-check", d, seed);
    j["trials"] = trials;
    j["tol"] = tol;
    j["constant_fading"] = constant_fading != 0;
    j["fraction_nonsingular"] = frac;
    j["nonsingular_count"] =
        static_cast<long long>(std::llround(frac * static_cast<double>(trials)));
    return j;
  });
}

plg_status plg_witness(plg_session* s, int T, int R, int L, int Q,
                       unsigned long long seed, char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::Witness w = prelog::witness(d, seed);
    json j = report_header("witness", d, seed);
    json zrows = json::array();
    for (int r = 0; r < d.R; ++r) {
      json zcols = json::array();
      for (int t = 0; t < d.T; ++t) zcols.push_back(matrix_json(w.Z.block(r, t)));
      zrows.push_back(zcols);
    }
    j["Z"] = zrows;
    json xj = json::array();
    for (const auto& xt : w.x.x) xj.push_back(vector_json(xt));
    j["x"] = xj;
    json sj = json::array();
    for (int r = 0; r < d.R; ++r) {
      json st = json::array();
      for (int t = 0; t < d.T; ++t) st.push_back(vector_json(w.s.s(r, t)));
      sj.push_back(st);
    }
    j["s"] = sj;
    j["certificate"] = {{"log_abs_det", w.log_abs_det},
                        {"sv_ratio", w.sv_ratio}};
    return j;
  });
}

plg_status plg_mc_logdet(plg_session* s, int T, int R, int L, int Q,
                         long long samples, unsigned long long seed, double tol,
                         char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::IndexSelection sel = prelog::build_selection(d);
    prelog::Rng zrng(prelog::Rng::derive(seed, kColoringStream));
    const prelog::ColoringMatrix Z = prelog::sample_coloring(d, zrng);
    const prelog::McEstimate est = prelog::mc_logdet(d, Z, sel, samples, seed, tol);
    json j = report_header("mc-logdet", d, seed);
    j["samples"] = est.samples;
    j["tol"] = tol;
    j["mean"] = est.mean;
    j["std_err"] = est.std_err;
    j["floored"] = est.floored;
    j["floored_fraction"] =
        static_cast<double>(est.floored) / static_cast<double>(est.samples);
    return j;
  });
}

plg_status plg_mc_mi_slope(plg_session* s, int T, int R, int L, int Q,
                           double snr_start_db, double snr_stop_db,
                           int snr_points, long long samples, int knn_k,
                           unsigned long long seed, char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::SnrGrid grid =
        prelog::SnrGrid::log_spaced_db(snr_start_db, snr_stop_db, snr_points);
    prelog::Rng zrng(prelog::Rng::derive(seed, kColoringStream));
    const prelog::ColoringMatrix Z = prelog::sample_coloring(d, zrng);
    const prelog::SlopeFit fit =
        prelog::mc_mi_slope(d, Z, grid, samples, knn_k, seed);
    json j = report_header("mc-mi", d, seed);
    j["snr_start_db"] = snr_start_db;
    j["snr_stop_db"] = snr_stop_db;
    j["snr_points"] = snr_points;
    j["samples_per_point"] = samples;
    j["knn_k"] = knn_k;
    j["slope_per_symbol"] = fit.slope;
    j["intercept"] = fit.intercept;
    json table = json::array();
    for (const auto& p : fit.per_point) {
      table.push_back({{"rho", p.rho},
                       {"rho_db", 10.0 * std::log10(p.rho)},
                       {"mi_per_symbol", p.estimate.mean},
                       {"std_err", p.estimate.std_err},
                       {"samples", p.estimate.samples}});
    }
    j["table"] = table;
    return j;
  });
}

plg_status plg_hyx_growth(plg_session* s, int T, int R, int L, int Q,
                          double snr_start_db, double snr_stop_db,
                          int snr_points, long long samples,
                          unsigned long long seed, char** json_out) {
  return run_guarded(s, json_out, [&] {
    const prelog::Dims d{T, R, L, Q};
    const prelog::SnrGrid grid =
        prelog::SnrGrid::log_spaced_db(snr_start_db, snr_stop_db, snr_points);
    prelog::Rng zrng(prelog::Rng::derive(seed, kColoringStream));
    const prelog::ColoringMatrix Z = prelog::sample_coloring(d, zrng);
    const prelog::SlopeFit fit =
        prelog::hyx_growth_check(d, Z, grid, samples, seed);
    json j = report_header("hyx-growth", d, seed);
    j["snr_start_db"] = snr_start_db;
    j["snr_stop_db"] = snr_stop_db;
    j["snr_points"] = snr_points;
    j["samples_per_point"] = samples;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["expected_slope"] = static_cast<long long>(T) * Q * R;
    json table = json::array();
    for (const auto& p : fit.per_point) {
      table.push_back({{"rho", p.rho},
                       {"rho_db", 10.0 * std::log10(p.rho)},
                       {"hyx_mean", p.estimate.mean},
                       {"std_err", p.estimate.std_err},
                       {"samples", p.estimate.samples}});
    }
    j["table"] = table;
    return j;
  });
}

}  // extern "C"

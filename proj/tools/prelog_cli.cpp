// Command-line front end. All computation goes through the C API in
// prelog.h; this binary only parses flags and formats output.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "prelog.h"

using nlohmann::json;

namespace {

struct Common {
  int T = 1, R = 1, L = 2, Q = 1;
  std::string format = "json";
  std::string out_path;
};

void add_dims(CLI::App* cmd, Common& c) {
  cmd->add_option("--T", c.T, "transmit antennas")->required();
  cmd->add_option("--R", c.R, "receive antennas")->required();
  cmd->add_option("--L", c.L, "block length")->required();
  cmd->add_option("--Q", c.Q, "correlation rank")->required();
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out_path,
                  "output file (defaults to stdout; PRELOG_OUT_DIR prefixes "
                  "relative paths)");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string scalar_str(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += csv_escape(prefix) + "," + csv_escape(scalar_str(j)) + "\n";
  }
}

// Tabular reports carry a "table" array; everything else degrades to
// key,value rows.
std::string to_csv(const json& j) {
  std::string out;
  if (j.contains("table") && j["table"].is_array() && !j["table"].empty()) {
    const json& table = j["table"];
    std::string header;
    for (const auto& [k, v] : table[0].items()) {
      if (!header.empty()) header += ",";
      header += csv_escape(k);
    }
    out += header + "\n";
    for (const auto& row : table) {
      std::string line;
      for (const auto& [k, v] : row.items()) {
        if (!line.empty()) line += ",";
        line += csv_escape(scalar_str(v));
      }
      out += line + "\n";
    }
    return out;
  }
  flatten(j, "", out);
  return out;
}

int emit(const Common& c, const char* json_text) {
  std::string payload = json_text;
  if (c.format == "csv") payload = to_csv(json::parse(payload));
  else payload += "\n";

  if (c.out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::string path = c.out_path;
  if (const char* dir = std::getenv("PRELOG_OUT_DIR");
      dir && !path.empty() && path[0] != '/')
    path = std::string(dir) + "/" + path;
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return 2;
  }
  f << payload;
  return 0;
}

int finish(plg_session* session, const Common& c, plg_status st, char* out) {
  if (st != PLG_OK) {
    std::cerr << "error: " << plg_last_error(session) << "\n";
    return st == PLG_ERR_INVALID ? 2 : 1;
  }
  const int rc = emit(c, out);
  plg_string_free(out);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity pre-log analysis for temporally correlated "
               "block-fading MIMO channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", plg_version());

  Common c;
  unsigned long long seed = 0;
  long long trials = 1000;
  long long samples = 10000;
  double tol = 1e-9;
  bool constant_fading = false;
  double snr_start_db = 20.0, snr_stop_db = 40.0;
  int snr_points = 5;
  int knn_k = 4;

  auto* cmd_bounds = app.add_subcommand("bounds", "closed-form pre-log bounds");
  add_dims(cmd_bounds, c);

  auto* cmd_sets = app.add_subcommand("index-sets", "I_r / P_t / D_t construction");
  add_dims(cmd_sets, c);

  auto* cmd_bezout = app.add_subcommand("bezout", "finite-to-one exponent");
  add_dims(cmd_bezout, c);

  auto* cmd_jac = app.add_subcommand("jacobian-check",
                                     "random nonsingularity trials");
  add_dims(cmd_jac, c);
  cmd_jac->add_option("--trials", trials)->capture_default_str();
  cmd_jac->add_option("--seed", seed)->required();
  cmd_jac->add_option("--tol", tol)->capture_default_str();
  cmd_jac->add_flag("--constant-fading", constant_fading,
                    "replicate one block across all antenna pairs");

  auto* cmd_wit = app.add_subcommand("witness", "explicit nonsingular witness");
  add_dims(cmd_wit, c);
  cmd_wit->add_option("--seed", seed)->required();

  auto* cmd_mcld = app.add_subcommand("mc-logdet",
                                      "Monte Carlo E[log |det J|^2]");
  add_dims(cmd_mcld, c);
  cmd_mcld->add_option("--samples", samples)->capture_default_str();
  cmd_mcld->add_option("--seed", seed)->required();
  cmd_mcld->add_option("--tol", tol)->capture_default_str();

  auto* cmd_mi = app.add_subcommand("mc-mi", "mutual-information slope estimate");
  add_dims(cmd_mi, c);
  cmd_mi->add_option("--samples", samples)->capture_default_str();
  cmd_mi->add_option("--seed", seed)->required();
  cmd_mi->add_option("--snr-start-db", snr_start_db)->capture_default_str();
  cmd_mi->add_option("--snr-stop-db", snr_stop_db)->capture_default_str();
  cmd_mi->add_option("--snr-points", snr_points)->capture_default_str();
  cmd_mi->add_option("--knn-k", knn_k)->capture_default_str();

  auto* cmd_hyx = app.add_subcommand("hyx-growth",
                                     "conditional-entropy growth slope");
  add_dims(cmd_hyx, c);
  cmd_hyx->add_option("--samples", samples)->capture_default_str();
  cmd_hyx->add_option("--seed", seed)->required();
  cmd_hyx->add_option("--snr-start-db", snr_start_db)->capture_default_str();
  cmd_hyx->add_option("--snr-stop-db", snr_stop_db)->capture_default_str();
  cmd_hyx->add_option("--snr-points", snr_points)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  plg_session* session = nullptr;
  if (plg_session_create(&session) != PLG_OK) {
    std::cerr << "error: cannot create session\n";
    return 1;
  }

  char* out = nullptr;
  plg_status st = PLG_ERR_INVALID;
  if (cmd_bounds->parsed())
    st = plg_bounds(session, c.T, c.R, c.L, c.Q, &out);
  else if (cmd_sets->parsed())
    st = plg_index_sets(session, c.T, c.R, c.L, c.Q, &out);
  else if (cmd_bezout->parsed())
    st = plg_bezout(session, c.T, c.R, c.L, c.Q, &out);
  else if (cmd_jac->parsed())
    st = plg_jacobian_check(session, c.T, c.R, c.L, c.Q, trials, seed, tol,
                            constant_fading ? 1 : 0, &out);
  else if (cmd_wit->parsed())
    st = plg_witness(session, c.T, c.R, c.L, c.Q, seed, &out);
  else if (cmd_mcld->parsed())
    st = plg_mc_logdet(session, c.T, c.R, c.L, c.Q, samples, seed, tol, &out);
  else if (cmd_mi->parsed())
    st = plg_mc_mi_slope(session, c.T, c.R, c.L, c.Q, snr_start_db, snr_stop_db,
                         snr_points, samples, knn_k, seed, &out);
  else if (cmd_hyx->parsed())
    st = plg_hyx_growth(session, c.T, c.R, c.L, c.Q, snr_start_db, snr_stop_db,
                        snr_points, samples, seed, &out);

  const int rc = finish(session, c, st, out);
  plg_session_destroy(session);
  return rc;
}

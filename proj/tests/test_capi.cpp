#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "prelog.h"

using nlohmann::json;

namespace {

struct Session {
  plg_session* s = nullptr;
  Session() { REQUIRE(plg_session_create(&s) == PLG_OK); }
  ~Session() { plg_session_destroy(s); }
};

json call_json(plg_status st, plg_session* s, char** out) {
  REQUIRE(st == PLG_OK);
  REQUIRE(*out != nullptr);
  const json j = json::parse(*out);
  plg_string_free(*out);
  *out = nullptr;
  CHECK(std::string(plg_last_error(s)).empty());
  return j;
}

}  // namespace

TEST_CASE("session lifecycle and version") {
  Session ses;
  CHECK(std::string(plg_version()) == "0.1.0");
  CHECK(plg_session_create(nullptr) == PLG_ERR_INVALID);
  plg_string_free(nullptr);  // must be a no-op
}

TEST_CASE("reports share the common header") {
  Session ses;
  char* out = nullptr;
  const json j = call_json(plg_bounds(ses.s, 2, 3, 5, 1, &out), ses.s, &out);
  CHECK(j.at("tool_version") == plg_version());
  CHECK(j.at("subcommand") == "bounds");
  CHECK(j.at("dims") == json({{"T", 2}, {"R", 3}, {"L", 5}, {"Q", 1}}));
  CHECK(j.at("seed") == 0);
}

TEST_CASE("bound report carries exact rationals with float mirrors") {
  Session ses;
  char* out = nullptr;
  const json j = call_json(plg_bounds(ses.s, 5, 25, 6, 1, &out), ses.s, &out);
  CHECK(j.at("chi_star") == "25/6");
  CHECK(j.at("chi_star_float").get<double>() == doctest::Approx(25.0 / 6.0));
  CHECK(j.at("t_opt") == "5/1");
  CHECK(j.at("zheng_tse") == "3/2");
  CHECK(j.at("best_T") == 5);
  CHECK(j.at("best_chi") == "25/6");
  REQUIRE(j.at("table").is_array());
  CHECK(j.at("table").size() == 5);
  CHECK(j.at("table")[4].at("chi_low") == "25/6");
}

TEST_CASE("index-set report reproduces the worked example") {
  Session ses;
  char* out = nullptr;
  const json j = call_json(plg_index_sets(ses.s, 3, 3, 6, 1, &out), ses.s, &out);
  CHECK(j.at("theta") == 9);
  CHECK(j.at("P") == json::parse("[[1,3,4],[1,2,5],[2,3,6]]"));
  CHECK(j.at("D") == json::parse("[[2,5,6],[3,4,6],[1,4,5]]"));
  CHECK(j.at("validation").at("all_pass") == true);
}

TEST_CASE("invalid dimensions map to the invalid-argument status") {
  Session ses;
  char* out = nullptr;
  CHECK(plg_index_sets(ses.s, 3, 2, 8, 1, &out) == PLG_ERR_INVALID);
  CHECK(out == nullptr);
  CHECK(!std::string(plg_last_error(ses.s)).empty());
  CHECK(plg_bounds(ses.s, 0, 1, 2, 1, &out) == PLG_ERR_INVALID);
  CHECK(plg_mc_logdet(ses.s, 1, 1, 2, 1, 1, 9, 1e-9, &out) == PLG_ERR_INVALID);
}

TEST_CASE("exponent report for the finite-to-one bound") {
  Session ses;
  char* out = nullptr;
  const json j = call_json(plg_bezout(ses.s, 3, 3, 6, 1, &out), ses.s, &out);
  CHECK(j.at("exponent") == 18);
}

TEST_CASE("witness report certifies nonsingularity") {
  Session ses;
  char* out = nullptr;
  const json j = call_json(plg_witness(ses.s, 1, 2, 2, 1, 5, &out), ses.s, &out);
  CHECK(j.at("certificate").at("sv_ratio").get<double>() > 1e-6);
  REQUIRE(j.at("Z").size() == 2);        // R block rows
  REQUIRE(j.at("Z")[0].size() == 1);     // T block cols
  REQUIRE(j.at("Z")[0][0].size() == 2);  // L rows
  CHECK(j.at("Z")[0][0][0].size() == 1); // Q cols
  CHECK(j.at("Z")[0][0][0][0].size() == 2);  // [re, im]
  CHECK(j.at("x")[0][1] == json::array({1.0, 0.0}));
}

TEST_CASE("stochastic reports are reproducible byte for byte") {
  Session ses;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(plg_jacobian_check(ses.s, 2, 2, 3, 1, 50, 99, 1e-9, 0, &a) == PLG_OK);
  REQUIRE(plg_jacobian_check(ses.s, 2, 2, 3, 1, 50, 99, 1e-9, 0, &b) == PLG_OK);
  CHECK(std::string(a) == std::string(b));
  const json j = json::parse(a);
  CHECK(j.at("fraction_nonsingular").get<double>() == 1.0);
  CHECK(j.at("seed") == 99);
  plg_string_free(a);
  plg_string_free(b);
}

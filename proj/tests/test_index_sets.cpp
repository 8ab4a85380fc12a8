#include <doctest.h>

#include <algorithm>
#include <set>

#include "prelog/index_sets.hpp"

using namespace prelog;

TEST_CASE("theta values for hand-checked shapes") {
  CHECK(theta_R(Dims{3, 3, 6, 1}) == 9);
  CHECK(theta_R(Dims{1, 1, 2, 1}) == 1);
  CHECK(theta_R(Dims{1, 2, 3, 1}) == 1);   // TQR - (R-T)L = -1, floor at T
  CHECK(theta_R(Dims{2, 2, 5, 2}) == 8);   // TQR = 8
  CHECK(theta_R(Dims{2, 4, 5, 2}) == 6);   // 16 - 10
}

TEST_CASE("pilot sets reproduce the worked three-antenna example") {
  const auto P = build_P(Dims{3, 3, 6, 1});
  REQUIRE(P.size() == 3);
  CHECK(P[0] == std::vector<int>{1, 3, 4});
  CHECK(P[1] == std::vector<int>{1, 2, 5});
  CHECK(P[2] == std::vector<int>{2, 3, 6});
}

TEST_CASE("row selections for the three-antenna example are full") {
  const Dims d{3, 3, 6, 1};
  const auto I = build_I(d);
  REQUIRE(I.size() == 3);
  // k = floor((TL-T)/(L-TQ)) = 15/3 = 5 >= R, so every I_r = [1:L]
  for (const auto& ir : I) CHECK(ir == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("row selections with a partial tail set") {
  const Dims d{1, 2, 3, 1};
  const auto I = build_I(d);
  // k = floor(2/2) = 1, ell = 2 - 2 = 0
  REQUIRE(I.size() == 2);
  CHECK(I[0] == std::vector<int>{1, 2, 3});
  CHECK(I[1] == std::vector<int>{1});
}

TEST_CASE("construction rejects unsupported shapes") {
  CHECK_THROWS_AS(build_selection(Dims{3, 2, 8, 1}), std::invalid_argument);  // T > R
  CHECK_THROWS_AS(build_selection(Dims{2, 2, 4, 2}), std::invalid_argument);  // L = TQ
  CHECK_THROWS_AS(build_selection(Dims{0, 1, 2, 1}), std::invalid_argument);
}

TEST_CASE("selection invariants hold on the whole sweep grid") {
  const auto grid = sweep_grid();
  CHECK(grid.size() == 216);
  for (const Dims& d : grid) {
    CAPTURE(d.T);
    CAPTURE(d.R);
    CAPTURE(d.L);
    CAPTURE(d.Q);
    const IndexSelection sel = build_selection(d);
    const ValidationReport rep = validate_selection(d, sel);
    for (const auto& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass);

    // set hygiene: sorted, distinct, in range
    auto well_formed = [&](const std::vector<std::vector<int>>& sets) {
      for (const auto& s : sets) {
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        for (int v : s) {
          CHECK(v >= 1);
          CHECK(v <= d.L);
        }
      }
    };
    well_formed(sel.I);
    well_formed(sel.P);
    well_formed(sel.D);
  }
}

TEST_CASE("selection construction is deterministic") {
  const Dims d{2, 4, 7, 2};
  const IndexSelection a = build_selection(d);
  const IndexSelection b = build_selection(d);
  CHECK(a.I == b.I);
  CHECK(a.P == b.P);
  CHECK(a.D == b.D);
  CHECK(a.theta == b.theta);
}

TEST_CASE("auxiliary witness sets satisfy their invariants for R > T") {
  for (const Dims& d : sweep_grid()) {
    if (d.R <= d.T) continue;
    CAPTURE(d.T);
    CAPTURE(d.R);
    CAPTURE(d.L);
    CAPTURE(d.Q);
    const auto P = build_P(d);
    const auto I = build_I(d);
    const Lemma5Sets lem = lemma5_sets(d);

    // L_t = Ptilde_t \ P_t against an independent recomputation
    Dims prev = d;
    prev.R = d.R - 1;
    const auto Pt = build_P(prev);
    std::vector<int> lunion;
    for (int t = 0; t < d.T; ++t) {
      std::vector<int> want;
      std::set_difference(Pt[t].begin(), Pt[t].end(), P[t].begin(), P[t].end(),
                          std::back_inserter(want));
      CHECK(lem.Lsets[t] == want);
      lunion.insert(lunion.end(), want.begin(), want.end());
    }
    std::sort(lunion.begin(), lunion.end());

    // G_t: size Q, pairwise disjoint, anchored in P_t, union = I_R \ union(L_t)
    std::vector<int> gunion;
    for (int t = 0; t < d.T; ++t) {
      CHECK(static_cast<int>(lem.Gsets[t].size()) == d.Q);
      CHECK(std::binary_search(lem.Gsets[t].begin(), lem.Gsets[t].end(),
                               lem.anchors[t]));
      CHECK(std::binary_search(P[t].begin(), P[t].end(), lem.anchors[t]));
      gunion.insert(gunion.end(), lem.Gsets[t].begin(), lem.Gsets[t].end());
    }
    std::sort(gunion.begin(), gunion.end());
    CHECK(std::adjacent_find(gunion.begin(), gunion.end()) == gunion.end());

    std::vector<int> pool;
    std::set_difference(I.back().begin(), I.back().end(), lunion.begin(),
                        lunion.end(), std::back_inserter(pool));
    CHECK(gunion == pool);
  }
}

TEST_CASE("auxiliary sets refuse R == T") {
  CHECK_THROWS_AS(lemma5_sets(Dims{2, 2, 5, 1}), std::invalid_argument);
}

#pragma once

#include <string>
#include <vector>

#include "prelog/types.hpp"

namespace prelog {

// Row-selection sets I_r, pilot sets P_t, data sets D_t. All indices are
// 1-based positions in [1:L]; sets are kept as sorted vectors.
struct IndexSelection {
  std::vector<std::vector<int>> I;  // R sets
  std::vector<std::vector<int>> P;  // T sets
  std::vector<std::vector<int>> D;  // T sets, D_t = [1:L] \ P_t
  int theta = 0;
  int k = 0;
  int ell = 0;
};

// max{T, TQR - (R-T)L}
int theta_R(const Dims& dims);

// Row selections: as many I_r = [1:L] as possible, then one partial set,
// then [1:TQ] for the rest.
std::vector<std::vector<int>> build_I(const Dims& dims);

// Pilot sets via the cyclic-filling construction. Throws if the closed-form
// set builder fails to reach theta_R distinct placements (does not happen on
// the sweep grid; checked by the exhaustive validator).
std::vector<std::vector<int>> build_P(const Dims& dims);

std::vector<std::vector<int>> build_D(const Dims& dims,
                                      const std::vector<std::vector<int>>& P);

IndexSelection build_selection(const Dims& dims);

// Auxiliary sets used by the witness induction when R > T.
struct Lemma5Sets {
  std::vector<std::vector<int>> Ptilde;  // pilot sets for R-1 antennas
  std::vector<std::vector<int>> Lsets;   // L_t = Ptilde_t \ P_t
  std::vector<std::vector<int>> Gsets;   // pairwise disjoint, |G_t| = Q
  std::vector<int> anchors;              // g_t in G_t ∩ P_t
};

// Builds the auxiliary sets and searches for a valid {G_t} partition by
// exhaustive backtracking (smallest-index-first). Throws on search failure.
Lemma5Sets lemma5_sets(const Dims& dims);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  void add(std::string name, bool pass, std::string detail = "");
};

// Report-only check of every IndexSelection invariant.
ValidationReport validate_selection(const Dims& dims, const IndexSelection& sel);

// Enumerates the test sweep grid {1<=T<=R<=Rmax, 1<=Q<=Qmax, TQ<L<=Lmax}.
std::vector<Dims> sweep_grid(int Rmax = 6, int Qmax = 3, int Lmax = 8);

}  // namespace prelog

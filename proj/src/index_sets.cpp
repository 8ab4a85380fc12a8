#include "prelog/index_sets.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace prelog {

namespace {

std::vector<int> range_set(int lo, int hi) {  // [lo:hi], empty if hi < lo
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<int>& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

long long sum_sizes(const std::vector<std::vector<int>>& sets) {
  long long n = 0;
  for (const auto& s : sets) n += static_cast<long long>(s.size());
  return n;
}

}  // namespace

int theta_R(const Dims& dims) {
  dims.require_construction();
  const long long a = static_cast<long long>(dims.T) * dims.Q * dims.R -
                      static_cast<long long>(dims.R - dims.T) * dims.L;
  return static_cast<int>(std::max<long long>(dims.T, a));
}

std::vector<std::vector<int>> build_I(const Dims& dims) {
  dims.require_construction();
  const int T = dims.T, R = dims.R, L = dims.L, Q = dims.Q;
  const int kfloor = (T * L - T) / (L - T * Q);
  const int k = std::min(kfloor, R);
  const int ell = T * L - T - (L - T * Q) * kfloor;

  std::vector<std::vector<int>> I(R);
  for (int r = 1; r <= R; ++r) {
    if (r <= k)
      I[r - 1] = range_set(1, L);
    else if (r == k + 1)
      I[r - 1] = range_set(1, T * Q + ell);
    else
      I[r - 1] = range_set(1, T * Q);
  }
  return I;
}

std::vector<std::vector<int>> build_P(const Dims& dims) {
  dims.require_construction();
  const int T = dims.T, L = dims.L;
  const int theta = theta_R(dims);
  const long long lcmTL = std::lcm<long long>(T, L);

  std::vector<std::vector<int>> P(T);
  long long placed = 0;
  for (int j = 1; j <= theta; ++j) {
    const int i = static_cast<int>((j - 1) % L) + 1;
    const int t = static_cast<int>((j + (j - 1) / lcmTL - 1) % T) + 1;
    auto& pt = P[t - 1];
    if (std::find(pt.begin(), pt.end(), i) != pt.end())
      throw std::runtime_error(
          "build_P: cyclic filling revisited an occupied position before "
          "reaching theta_R; construction undefined for these dims");
    pt.push_back(i);
    ++placed;
  }
  if (placed != theta)
    throw std::runtime_error("build_P: did not reach theta_R placements");
  for (auto& pt : P) std::sort(pt.begin(), pt.end());
  return P;
}

std::vector<std::vector<int>> build_D(const Dims& dims,
                                      const std::vector<std::vector<int>>& P) {
  dims.validate();
  const auto full = range_set(1, dims.L);
  std::vector<std::vector<int>> D;
  D.reserve(P.size());
  for (const auto& pt : P) {
    for (int i : pt)
      if (i < 1 || i > dims.L)
        throw std::invalid_argument("build_D: pilot index outside [1:L]");
    D.push_back(set_minus(full, pt));
  }
  return D;
}

IndexSelection build_selection(const Dims& dims) {
  IndexSelection sel;
  sel.I = build_I(dims);
  sel.P = build_P(dims);
  sel.D = build_D(dims, sel.P);
  sel.theta = theta_R(dims);
  const int kfloor = (dims.T * dims.L - dims.T) / (dims.L - dims.T * dims.Q);
  sel.k = std::min(kfloor, dims.R);
  sel.ell = dims.T * dims.L - dims.T - (dims.L - dims.T * dims.Q) * kfloor;
  return sel;
}

namespace {

// Backtracking partition of `pool` into T blocks of size Q with G_t ∩ P_t
// nonempty. Elements assigned smallest-index-first, block preference by t.
bool assign_g(const std::vector<int>& pool, std::size_t idx,
              const std::vector<std::vector<int>>& P, int Q,
              std::vector<std::vector<int>>& G) {
  const int T = static_cast<int>(G.size());
  if (idx == pool.size()) {
    for (int t = 0; t < T; ++t) {
      bool hit = false;
      for (int g : G[t])
        if (contains(P[t], g)) { hit = true; break; }
      if (!hit) return false;
    }
    return true;
  }
  const int x = pool[idx];
  for (int t = 0; t < T; ++t) {
    if (static_cast<int>(G[t].size()) >= Q) continue;
    G[t].push_back(x);
    if (assign_g(pool, idx + 1, P, Q, G)) return true;
    G[t].pop_back();
  }
  return false;
}

}  // namespace

Lemma5Sets lemma5_sets(const Dims& dims) {
  dims.require_construction();
  if (dims.R <= dims.T)
    throw std::invalid_argument("lemma5_sets: requires R > T");

  const auto P = build_P(dims);
  const auto I = build_I(dims);
  const auto& I_R = I.back();

  Dims prev = dims;
  prev.R = dims.R - 1;
  Lemma5Sets out;
  out.Ptilde = build_P(prev);

  out.Lsets.resize(dims.T);
  std::vector<int> Lunion;
  for (int t = 0; t < dims.T; ++t) {
    out.Lsets[t] = set_minus(out.Ptilde[t], P[t]);
    Lunion.insert(Lunion.end(), out.Lsets[t].begin(), out.Lsets[t].end());
  }
  std::sort(Lunion.begin(), Lunion.end());

  const std::vector<int> pool = set_minus(I_R, Lunion);  // must have size TQ
  if (static_cast<int>(pool.size()) != dims.T * dims.Q)
    throw std::runtime_error("lemma5_sets: |I_R \\ union(L_t)| != TQ");

  out.Gsets.assign(dims.T, {});
  if (!assign_g(pool, 0, P, dims.Q, out.Gsets))
    throw std::runtime_error("lemma5_sets: exhaustive G_t search failed");
  for (auto& g : out.Gsets) std::sort(g.begin(), g.end());

  out.anchors.resize(dims.T);
  for (int t = 0; t < dims.T; ++t) {
    out.anchors[t] = -1;
    for (int g : out.Gsets[t])
      if (contains(P[t], g)) { out.anchors[t] = g; break; }
  }
  return out;
}

void ValidationReport::add(std::string name, bool pass, std::string detail) {
  all_pass = all_pass && pass;
  checks.push_back({std::move(name), pass, std::move(detail)});
}

ValidationReport validate_selection(const Dims& dims, const IndexSelection& sel) {
  ValidationReport rep;
  const long long Isum = sum_sizes(sel.I);
  const long long Itarget =
      std::min<long long>(static_cast<long long>(dims.T) * dims.L - dims.T +
                              static_cast<long long>(dims.T) * dims.Q * dims.R,
                          static_cast<long long>(dims.R) * dims.L);
  rep.add("sum_I_sizes", Isum == Itarget,
          "got " + std::to_string(Isum) + ", want " + std::to_string(Itarget));

  long long Psum = sum_sizes(sel.P);
  long long theta = -1;
  try {
    theta = theta_R(dims);
  } catch (const std::exception&) {
  }
  rep.add("sum_P_sizes", theta >= 0 && Psum == theta,
          "got " + std::to_string(Psum) + ", want " + std::to_string(theta));

  bool psize_ok = true;
  int pmax = 0, pmin = dims.L + 1;
  for (const auto& pt : sel.P) {
    const int n = static_cast<int>(pt.size());
    if (n > dims.T * dims.Q) psize_ok = false;
    pmax = std::max(pmax, n);
    pmin = std::min(pmin, n);
  }
  rep.add("P_size_le_TQ", psize_ok);
  rep.add("P_sizes_balanced", sel.P.empty() || pmax - pmin <= 1);

  bool partition_ok = sel.D.size() == sel.P.size();
  for (std::size_t t = 0; partition_ok && t < sel.P.size(); ++t) {
    std::vector<int> u;
    std::set_union(sel.P[t].begin(), sel.P[t].end(), sel.D[t].begin(),
                   sel.D[t].end(), std::back_inserter(u));
    std::vector<int> inter;
    std::set_intersection(sel.P[t].begin(), sel.P[t].end(), sel.D[t].begin(),
                          sel.D[t].end(), std::back_inserter(inter));
    partition_ok = inter.empty() &&
                   u == std::vector<int>([&] {
                     std::vector<int> f;
                     for (int i = 1; i <= dims.L; ++i) f.push_back(i);
                     return f;
                   }());
  }
  rep.add("D_complements_P", partition_ok);

  // squareness chain: sum|I_r| = TQR + sum|D_t|
  const long long cols = static_cast<long long>(dims.T) * dims.Q * dims.R +
                         sum_sizes(sel.D);
  rep.add("square_row_col", Isum == cols,
          "rows " + std::to_string(Isum) + ", cols " + std::to_string(cols));
  return rep;
}

std::vector<Dims> sweep_grid(int Rmax, int Qmax, int Lmax) {
  std::vector<Dims> grid;
  for (int T = 1; T <= Rmax; ++T)
    for (int R = T; R <= Rmax; ++R)
      for (int Q = 1; Q <= Qmax; ++Q)
        for (int L = T * Q + 1; L <= Lmax; ++L)
          grid.push_back(Dims{T, R, L, Q});
  return grid;
}

}  // namespace prelog

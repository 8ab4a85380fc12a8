#include "prelog/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prelog {

namespace {

long long sum_sizes(const std::vector<std::vector<int>>& sets) {
  long long n = 0;
  for (const auto& s : sets) n += static_cast<long long>(s.size());
  return n;
}

bool in_set(const std::vector<int>& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

}  // namespace

JacobianAssembly assemble(const Dims& dims, const IndexSelection& sel,
                          const ColoringMatrix& Z, const ChannelInput& x,
                          const FadingRealization& s) {
  dims.require_construction();
  if (static_cast<int>(sel.I.size()) != dims.R ||
      static_cast<int>(sel.P.size()) != dims.T ||
      static_cast<int>(sel.D.size()) != dims.T)
    throw std::invalid_argument("assemble: selection sizes mismatch dims");

  const long long rows = sum_sizes(sel.I);
  const long long xi_cols =
      static_cast<long long>(dims.T) * dims.Q * dims.R;
  const long long cols = xi_cols + sum_sizes(sel.D);
  if (rows != cols)
    throw std::invalid_argument("assemble: selection does not give a square Jacobian");

  JacobianAssembly out;
  out.N = static_cast<int>(rows);
  out.xi_cols = static_cast<int>(xi_cols);
  for (const auto& dt : sel.D) out.data_cols.push_back(static_cast<int>(dt.size()));
  out.matrix = Eigen::MatrixXcd::Zero(out.N, out.N);

  std::vector<int> row_off(dims.R + 1, 0);
  for (int r = 0; r < dims.R; ++r)
    row_off[r + 1] = row_off[r] + static_cast<int>(sel.I[r].size());

  // Xi-tilde blocks: column block t has width RQ, blockdiag over r.
  for (int t = 0; t < dims.T; ++t) {
    for (int r = 0; r < dims.R; ++r) {
      const Eigen::MatrixXcd xz = x.x[t].asDiagonal() * Z.block(r, t);
      const int c0 = t * dims.R * dims.Q + r * dims.Q;
      for (std::size_t i = 0; i < sel.I[r].size(); ++i) {
        const int ell = sel.I[r][i];  // 1-based
        out.matrix.block(row_off[r] + static_cast<int>(i), c0, 1, dims.Q) =
            xz.row(ell - 1);
      }
    }
  }

  // Data blocks: a^(ell) = [Z_{r,t}]_{ell} s_{r,t}, column kept iff ell in D_t.
  int c0 = out.xi_cols;
  for (int t = 0; t < dims.T; ++t) {
    for (int r = 0; r < dims.R; ++r) {
      const Eigen::VectorXcd a = Z.block(r, t) * s.s(r, t);
      for (std::size_t i = 0; i < sel.I[r].size(); ++i) {
        const int ell = sel.I[r][i];
        const auto it = std::lower_bound(sel.D[t].begin(), sel.D[t].end(), ell);
        if (it != sel.D[t].end() && *it == ell) {
          const int j = static_cast<int>(it - sel.D[t].begin());
          out.matrix(row_off[r] + static_cast<int>(i), c0 + j) = a(ell - 1);
        }
      }
    }
    c0 += static_cast<int>(sel.D[t].size());
  }
  return out;
}

LogDet log_abs_det(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("log_abs_det: matrix must be square");
  LogDet out;
  if (m.rows() == 0) {
    out.log_abs = 0.0;
    out.phase = cplx(1.0, 0.0);
    return out;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto& u = lu.matrixLU();
  double log_abs = 0.0;
  cplx phase(static_cast<double>(lu.permutationP().determinant()), 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    const cplx d = u(i, i);
    const double mag = std::abs(d);
    if (mag == 0.0 || !std::isfinite(mag)) {
      out.singular = true;
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.phase = cplx(0.0, 0.0);
      return out;
    }
    log_abs += std::log(mag);
    phase *= d / mag;
  }
  out.log_abs = log_abs;
  out.phase = phase;
  return out;
}

double sv_ratio(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  if (!(top > 0.0)) return 0.0;
  return sv(sv.size() - 1) / top;
}

ColoringMatrix constant_fading_Z(const Dims& dims, const Eigen::MatrixXcd& base,
                                 double rank_tol) {
  dims.validate();
  if (base.rows() != dims.L || base.cols() != dims.Q)
    throw std::invalid_argument("constant_fading_Z: base must be L x Q");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(base);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) / sv(0) <= rank_tol)
    throw std::invalid_argument("constant_fading_Z: base is rank deficient");
  ColoringMatrix Z(dims.R, dims.T, dims.L, dims.Q);
  for (auto& b : Z.blocks_) b = base;
  return Z;
}

double genericity_trial(const Dims& dims, const IndexSelection& sel,
                        long long trials, std::uint64_t seed, double tol,
                        bool constant_fading) {
  dims.require_construction();
  if (trials < 1) throw std::invalid_argument("genericity_trial: trials >= 1");
  long long ok = 0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    ColoringMatrix Z;
    if (constant_fading) {
      Eigen::MatrixXcd base(dims.L, dims.Q);
      for (int r = 0; r < dims.L; ++r)
        for (int c = 0; c < dims.Q; ++c) base(r, c) = rng.cgaussian();
      Z = ColoringMatrix(dims.R, dims.T, dims.L, dims.Q);
      for (auto& b : Z.blocks_) b = base;
    } else {
      Z = sample_coloring(dims, rng);
    }
    const ChannelInput x = sample_input(dims, rng);
    const FadingRealization s = sample_fading(dims, rng);
    const JacobianAssembly J = assemble(dims, sel, Z, x, s);
    if (sv_ratio(J.matrix) > tol) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

long long bezout_exponent(const Dims& dims, const IndexSelection& sel) {
  dims.validate();
  return sum_sizes(sel.D) +
         static_cast<long long>(dims.T) * dims.Q * dims.R;
}

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
  return m;
}

// Unit vector orthogonal to each row of `rows` ((Q-1) x Q, possibly empty).
Eigen::VectorXcd orthogonal_complement_vector(const Eigen::MatrixXcd& rows,
                                              int q, Rng& rng) {
  if (rows.rows() == 0) {
    Eigen::VectorXcd v(q);
    for (int i = 0; i < q; ++i) v(i) = rng.cgaussian();
    return v;
  }
  // kernel via SVD: right singular vectors beyond the numerical rank
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows, Eigen::ComputeFullV);
  const int rank = static_cast<int>(svd.rank());
  const Eigen::MatrixXcd v = svd.matrixV();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(q);
  for (int j = rank; j < q; ++j) out += rng.cgaussian() * v.col(j);
  return out;
}

struct LevelSets {
  IndexSelection sel;
  Lemma5Sets lem;
};

// One construction attempt for a given sub-seed; returns false when any
// verification step fails.
bool try_witness(const Dims& dims, std::uint64_t sub_seed, double tol,
                 Witness& out) {
  Rng rng(sub_seed);
  const int T = dims.T, R = dims.R, L = dims.L, Q = dims.Q;

  ColoringMatrix Z(R, T, L, Q);
  FadingRealization s(dims);
  const ChannelInput x = ChannelInput::ones(dims);

  // base case: R' = T, generic blocks, off-diagonal fading switched off
  for (int r = 0; r < T; ++r)
    for (int t = 0; t < T; ++t) Z.block(r, t) = random_matrix(L, Q, rng);
  for (int t = 0; t < T; ++t)
    for (int q = 0; q < Q; ++q) s.s(t, t)(q) = rng.cgaussian();

  for (int Rp = T; Rp <= R; ++Rp) {
    Dims d = dims;
    d.R = Rp;
    const IndexSelection sel = build_selection(d);

    if (Rp > T) {
      const Lemma5Sets lem = lemma5_sets(d);
      std::vector<int> lunion;
      for (const auto& lt : lem.Lsets)
        lunion.insert(lunion.end(), lt.begin(), lt.end());
      std::sort(lunion.begin(), lunion.end());

      const int r = Rp - 1;  // 0-based block row being constructed
      for (int t = 0; t < T; ++t) {
        Eigen::MatrixXcd& zb = Z.block(r, t);
        zb.setZero();
        for (int g : lem.Gsets[t])
          for (int q = 0; q < Q; ++q) zb(g - 1, q) = rng.cgaussian();

        // s_{R',t}: orthogonal to the non-anchor rows of [Z]_{G_t}
        Eigen::MatrixXcd non_anchor(Q - 1, Q);
        int k = 0;
        for (int g : lem.Gsets[t])
          if (g != lem.anchors[t]) non_anchor.row(k++) = zb.row(g - 1);
        const Eigen::VectorXcd sv =
            orthogonal_complement_vector(non_anchor, Q, rng);
        s.s(r, t) = sv;
        if (std::abs((zb.row(lem.anchors[t] - 1) * sv).value()) <= tol)
          return false;

        // rows in L_t: generic with nonzero a^(ell); rows in (union L)\L_t
        // stay zero so the corresponding data entries vanish
        for (int ell : lem.Lsets[t]) {
          for (int q = 0; q < Q; ++q) zb(ell - 1, q) = rng.cgaussian();
          if (std::abs((zb.row(ell - 1) * sv).value()) <= tol) return false;
        }

        // rows outside I_{R'} are unconstrained
        const auto& i_last = sel.I.back();
        for (int ell = 1; ell <= L; ++ell) {
          if (in_set(i_last, ell)) continue;
          for (int q = 0; q < Q; ++q) zb(ell - 1, q) = rng.cgaussian();
        }
      }
    }

    // verify the level before moving on
    ColoringMatrix Zp(Rp, T, L, Q);
    FadingRealization sp(d);
    for (int r = 0; r < Rp; ++r)
      for (int t = 0; t < T; ++t) {
        Zp.block(r, t) = Z.block(r, t);
        sp.s(r, t) = s.s(r, t);
      }
    const ChannelInput xp = ChannelInput::ones(d);
    const JacobianAssembly J = assemble(d, sel, Zp, xp, sp);
    const double ratio = sv_ratio(J.matrix);
    if (!(ratio > tol)) return false;
    if (Rp == R) {
      out.Z = std::move(Zp);
      out.x = xp;
      out.s = std::move(sp);
      out.sv_ratio = ratio;
      out.log_abs_det = log_abs_det(J.matrix).log_abs;
    }
  }
  return true;
}

}  // namespace

Witness witness(const Dims& dims, std::uint64_t seed, double tol,
                int max_retries) {
  dims.require_construction();
  Witness out;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    if (try_witness(dims, Rng::derive(seed, static_cast<std::uint64_t>(attempt)),
                    tol, out))
      return out;
  }
  throw std::runtime_error(
      "witness: construction failed verification after bounded retries");
}

}  // namespace prelog

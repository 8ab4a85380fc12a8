#pragma once

#include <Eigen/Dense>

#include "prelog/index_sets.hpp"
#include "prelog/model.hpp"

namespace prelog {

// Column layout of the square deterministic Jacobian: first TQR columns are
// the Xi-tilde blocks (Q columns per (t,r), t-major), then per-t data-column
// blocks of width |D_t| with rows restricted to the I_r.
struct JacobianAssembly {
  Eigen::MatrixXcd matrix;
  int N = 0;
  int xi_cols = 0;                // TQR
  std::vector<int> data_cols;     // |D_t| per t
};

JacobianAssembly assemble(const Dims& dims, const IndexSelection& sel,
                          const ColoringMatrix& Z, const ChannelInput& x,
                          const FadingRealization& s);

struct LogDet {
  double log_abs = 0.0;  // -inf when singular
  cplx phase{0.0, 0.0};  // det/|det|, zero when singular
  bool singular = false;
};

// Pivoted LU under the hood.
LogDet log_abs_det(const Eigen::MatrixXcd& m);

// sigma_min / sigma_max, 0 for an empty or zero matrix
double sv_ratio(const Eigen::MatrixXcd& m);

// Fraction of i.i.d. Gaussian (Z, x, s) draws whose Jacobian passes the
// condition-based nonsingularity test. With constant_fading set, every trial
// replicates one random L x Q block across all (r,t).
double genericity_trial(const Dims& dims, const IndexSelection& sel,
                        long long trials, std::uint64_t seed, double tol,
                        bool constant_fading = false);

// All R*T blocks equal to base (rank-Q required).
ColoringMatrix constant_fading_Z(const Dims& dims, const Eigen::MatrixXcd& base,
                                 double rank_tol = 1e-9);

struct Witness {
  ColoringMatrix Z;
  ChannelInput x;  // all-ones
  FadingRealization s;
  double log_abs_det = 0.0;
  double sv_ratio = 0.0;
};

// Explicit nonsingularity witness built by the base-case + inductive-step
// construction; free parameters are seeded Gaussian draws verified after each
// level, with bounded retries. Throws on verification failure.
Witness witness(const Dims& dims, std::uint64_t seed, double tol = 1e-6,
                int max_retries = 16);

// sum_t |D_t| + TQR; the finite-to-one bound is 2^exponent, kept as exponent.
long long bezout_exponent(const Dims& dims, const IndexSelection& sel);

}  // namespace prelog

#pragma once

#include <vector>

#include "prelog/jacobian.hpp"

namespace prelog {

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  long long floored = 0;  // numerically singular draws, contributed log(tol^2)
};

struct SnrGrid {
  std::vector<double> rhos;  // linear, strictly increasing, >= 3 points

  explicit SnrGrid(std::vector<double> points);
  static SnrGrid log_spaced_db(double start_db, double stop_db, int points);
};

// Estimates E[log |det J_phi(s, x_D)|^2] over i.i.d. Gaussian (s, x).
McEstimate mc_logdet(const Dims& dims, const ColoringMatrix& Z,
                     const IndexSelection& sel, long long samples,
                     std::uint64_t seed, double tol = 1e-9);

struct SlopePoint {
  double rho = 0.0;
  McEstimate estimate;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<SlopePoint> per_point;
};

// Per SNR point: hhat(y) by k-NN on the 2RL-dimensional real embedding minus
// the closed-form conditional entropy averaged over the sampled inputs. The
// reported values and the fitted slope are per symbol (divided by L), so the
// slope is directly comparable with the pre-log bounds.
SlopeFit mc_mi_slope(const Dims& dims, const ColoringMatrix& Z,
                     const SnrGrid& grid, long long samples, int knn_k,
                     std::uint64_t seed, int max_rl = 4);

// Regresses the sampled-input average of h(y|x) on log(rho); the slope
// approaches TQR at high SNR.
SlopeFit hyx_growth_check(const Dims& dims, const ColoringMatrix& Z,
                          const SnrGrid& grid, long long samples,
                          std::uint64_t seed);

}  // namespace prelog

#pragma once

#include <Eigen/Dense>
#include <tuple>
#include <vector>

#include "prelog/types.hpp"

namespace prelog {

// R x T grid of L x Q blocks Z_{r,t}; stacked shape RL x TQ.
struct ColoringMatrix {
  int R = 0, T = 0, L = 0, Q = 0;
  std::vector<Eigen::MatrixXcd> blocks_;  // r-major: blocks_[r*T + t]

  ColoringMatrix() = default;
  ColoringMatrix(int R_, int T_, int L_, int Q_)
      : R(R_), T(T_), L(L_), Q(Q_),
        blocks_(static_cast<std::size_t>(R_) * T_,
                Eigen::MatrixXcd::Zero(L_, Q_)) {}

  Eigen::MatrixXcd& block(int r, int t) { return blocks_[r * T + t]; }
  const Eigen::MatrixXcd& block(int r, int t) const { return blocks_[r * T + t]; }

  Eigen::MatrixXcd stacked() const;

  // smallest singular value across blocks, relative to the largest per block
  double min_block_rank_margin() const;
};

// T signal vectors of length L.
struct ChannelInput {
  std::vector<Eigen::VectorXcd> x;  // x[t], length L

  static ChannelInput zeros(const Dims& d) {
    ChannelInput c;
    c.x.assign(d.T, Eigen::VectorXcd::Zero(d.L));
    return c;
  }
  static ChannelInput ones(const Dims& d) {
    ChannelInput c;
    c.x.assign(d.T, Eigen::VectorXcd::Ones(d.L));
    return c;
  }
};

// Whitened fading vectors s_{r,t} of length Q.
struct FadingRealization {
  int R = 0, T = 0;
  std::vector<Eigen::VectorXcd> s_;  // t-major then r: s_[t*R + r]

  FadingRealization() = default;
  FadingRealization(const Dims& d)
      : R(d.R), T(d.T),
        s_(static_cast<std::size_t>(d.R) * d.T, Eigen::VectorXcd::Zero(d.Q)) {}

  Eigen::VectorXcd& s(int r, int t) { return s_[t * R + r]; }
  const Eigen::VectorXcd& s(int r, int t) const { return s_[t * R + r]; }

  Eigen::VectorXcd stacked_t(int t) const;  // s_t, length RQ
  Eigen::VectorXcd stacked() const;         // s, length TRQ
};

struct NoiseRealization {
  Eigen::VectorXcd n;  // length RL

  static NoiseRealization zeros(const Dims& d) {
    return {Eigen::VectorXcd::Zero(d.R * d.L)};
  }
};

// Xi_t = blockdiag(X_t Z_{1,t}, ..., X_t Z_{R,t}), RL x RQ.
Eigen::MatrixXcd xi_block(const Dims& dims, const ColoringMatrix& Z,
                          const ChannelInput& x, int t);

// sum_t Xi_t s_t, length RL
Eigen::VectorXcd ybar(const Dims& dims, const ColoringMatrix& Z,
                      const ChannelInput& x, const FadingRealization& s);

// y = sqrt(rho/T) ybar + n
Eigen::VectorXcd apply_channel(const Dims& dims, const Snr& snr,
                               const ColoringMatrix& Z, const ChannelInput& x,
                               const FadingRealization& s,
                               const NoiseRealization& n);

// i.i.d. CN(0,1) draws, deterministic in the seed
std::tuple<ChannelInput, FadingRealization, NoiseRealization>
sample_realization(const Dims& dims, std::uint64_t seed);

ChannelInput sample_input(const Dims& dims, Rng& rng);
FadingRealization sample_fading(const Dims& dims, Rng& rng);
NoiseRealization sample_noise(const Dims& dims, Rng& rng);
ColoringMatrix sample_coloring(const Dims& dims, Rng& rng);

// I_RL + (rho/T) sum_t Xi_t Xi_t^H, Hermitian positive definite
Eigen::MatrixXcd conditional_covariance(const Dims& dims, const Snr& snr,
                                        const ColoringMatrix& Z,
                                        const ChannelInput& x);

// h(y | x = x) = log det(pi e Sigma(x)), in nats
double conditional_entropy_given_x(const Dims& dims, const Snr& snr,
                                   const ColoringMatrix& Z,
                                   const ChannelInput& x);

}  // namespace prelog

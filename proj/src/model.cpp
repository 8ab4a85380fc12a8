#include "prelog/model.hpp"

#include <cmath>

namespace prelog {

namespace {

void check_shapes(const Dims& dims, const ColoringMatrix& Z,
                  const ChannelInput& x, const FadingRealization* s) {
  dims.validate();
  if (Z.R != dims.R || Z.T != dims.T || Z.L != dims.L || Z.Q != dims.Q)
    throw std::invalid_argument("coloring matrix shape mismatch");
  if (static_cast<int>(x.x.size()) != dims.T)
    throw std::invalid_argument("channel input: need T vectors");
  for (const auto& xt : x.x)
    if (xt.size() != dims.L)
      throw std::invalid_argument("channel input: vectors must have length L");
  if (s) {
    if (s->R != dims.R || s->T != dims.T)
      throw std::invalid_argument("fading realization shape mismatch");
    for (const auto& v : s->s_)
      if (v.size() != dims.Q)
        throw std::invalid_argument("fading vectors must have length Q");
  }
}

}  // namespace

Eigen::MatrixXcd ColoringMatrix::stacked() const {
  Eigen::MatrixXcd out(R * L, T * Q);
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t)
      out.block(r * L, t * Q, L, Q) = block(r, t);
  return out;
}

double ColoringMatrix::min_block_rank_margin() const {
  double margin = 1.0;
  for (const auto& b : blocks_) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    const auto& sv = svd.singularValues();
    const double top = sv(0);
    if (top <= 0.0) return 0.0;
    margin = std::min(margin, sv(sv.size() - 1) / top);
  }
  return margin;
}

Eigen::VectorXcd FadingRealization::stacked_t(int t) const {
  const int Q = static_cast<int>(s_[0].size());
  Eigen::VectorXcd out(R * Q);
  for (int r = 0; r < R; ++r) out.segment(r * Q, Q) = s(r, t);
  return out;
}

Eigen::VectorXcd FadingRealization::stacked() const {
  const int Q = static_cast<int>(s_[0].size());
  Eigen::VectorXcd out(T * R * Q);
  for (int t = 0; t < T; ++t) out.segment(t * R * Q, R * Q) = stacked_t(t);
  return out;
}

Eigen::MatrixXcd xi_block(const Dims& dims, const ColoringMatrix& Z,
                          const ChannelInput& x, int t) {
  check_shapes(dims, Z, x, nullptr);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dims.R * dims.L, dims.R * dims.Q);
  for (int r = 0; r < dims.R; ++r)
    out.block(r * dims.L, r * dims.Q, dims.L, dims.Q) =
        x.x[t].asDiagonal() * Z.block(r, t);
  return out;
}

Eigen::VectorXcd ybar(const Dims& dims, const ColoringMatrix& Z,
                      const ChannelInput& x, const FadingRealization& s) {
  check_shapes(dims, Z, x, &s);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dims.R * dims.L);
  for (int t = 0; t < dims.T; ++t)
    for (int r = 0; r < dims.R; ++r)
      out.segment(r * dims.L, dims.L) +=
          x.x[t].asDiagonal() * (Z.block(r, t) * s.s(r, t));
  return out;
}

Eigen::VectorXcd apply_channel(const Dims& dims, const Snr& snr,
                               const ColoringMatrix& Z, const ChannelInput& x,
                               const FadingRealization& s,
                               const NoiseRealization& n) {
  if (n.n.size() != dims.R * dims.L)
    throw std::invalid_argument("noise vector must have length RL");
  return std::sqrt(snr.rho / dims.T) * ybar(dims, Z, x, s) + n.n;
}

ChannelInput sample_input(const Dims& dims, Rng& rng) {
  ChannelInput c;
  c.x.reserve(dims.T);
  for (int t = 0; t < dims.T; ++t) {
    Eigen::VectorXcd v(dims.L);
    for (int l = 0; l < dims.L; ++l) v(l) = rng.cgaussian();
    c.x.push_back(std::move(v));
  }
  return c;
}

FadingRealization sample_fading(const Dims& dims, Rng& rng) {
  FadingRealization f(dims);
  for (int t = 0; t < dims.T; ++t)
    for (int r = 0; r < dims.R; ++r)
      for (int q = 0; q < dims.Q; ++q) f.s(r, t)(q) = rng.cgaussian();
  return f;
}

NoiseRealization sample_noise(const Dims& dims, Rng& rng) {
  NoiseRealization n{Eigen::VectorXcd(dims.R * dims.L)};
  for (int i = 0; i < n.n.size(); ++i) n.n(i) = rng.cgaussian();
  return n;
}

ColoringMatrix sample_coloring(const Dims& dims, Rng& rng) {
  ColoringMatrix Z(dims.R, dims.T, dims.L, dims.Q);
  for (auto& b : Z.blocks_)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) = rng.cgaussian();
  return Z;
}

std::tuple<ChannelInput, FadingRealization, NoiseRealization>
sample_realization(const Dims& dims, std::uint64_t seed) {
  dims.validate();
  Rng rng(seed);
  ChannelInput x = sample_input(dims, rng);
  FadingRealization s = sample_fading(dims, rng);
  NoiseRealization n = sample_noise(dims, rng);
  return {std::move(x), std::move(s), std::move(n)};
}

Eigen::MatrixXcd conditional_covariance(const Dims& dims, const Snr& snr,
                                        const ColoringMatrix& Z,
                                        const ChannelInput& x) {
  check_shapes(dims, Z, x, nullptr);
  const int n = dims.R * dims.L;
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Identity(n, n);
  const double scale = snr.rho / dims.T;
  for (int t = 0; t < dims.T; ++t) {
    const Eigen::MatrixXcd xt = xi_block(dims, Z, x, t);
    cov.noalias() += scale * (xt * xt.adjoint());
  }
  // clean up roundoff asymmetry
  return (cov + cov.adjoint()) / 2.0;
}

double conditional_entropy_given_x(const Dims& dims, const Snr& snr,
                                   const ColoringMatrix& Z,
                                   const ChannelInput& x) {
  const Eigen::MatrixXcd cov = conditional_covariance(dims, snr, Z, x);
  Eigen::LLT<Eigen::MatrixXcd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("conditional covariance is not positive definite");
  const Eigen::MatrixXcd& lfac = llt.matrixLLT();
  double logdet = 0.0;
  for (int i = 0; i < cov.rows(); ++i)
    logdet += 2.0 * std::log(std::real(lfac(i, i)));
  const int n = dims.R * dims.L;
  return n * std::log(M_PI * std::exp(1.0)) + logdet;
}

}  // namespace prelog

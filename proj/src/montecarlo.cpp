#include "prelog/montecarlo.hpp"

#include <cmath>

#include "prelog/knn_entropy.hpp"

namespace prelog {

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct LinFit {
  double slope = 0.0, intercept = 0.0;
};

LinFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  LinFit f;
  f.slope = num / den;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace

SnrGrid::SnrGrid(std::vector<double> points) : rhos(std::move(points)) {
  if (rhos.size() < 3)
    throw std::invalid_argument("snr grid: need at least 3 points");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!(rhos[i] > 0.0))
      throw std::invalid_argument("snr grid: rho must be positive");
    if (i > 0 && !(rhos[i] > rhos[i - 1]))
      throw std::invalid_argument("snr grid: points must be strictly increasing");
  }
}

SnrGrid SnrGrid::log_spaced_db(double start_db, double stop_db, int points) {
  if (points < 3) throw std::invalid_argument("snr grid: need at least 3 points");
  if (!(stop_db > start_db))
    throw std::invalid_argument("snr grid: stop must exceed start");
  std::vector<double> rhos;
  for (int i = 0; i < points; ++i) {
    const double db =
        start_db + (stop_db - start_db) * i / static_cast<double>(points - 1);
    rhos.push_back(std::pow(10.0, db / 10.0));
  }
  return SnrGrid(std::move(rhos));
}

McEstimate mc_logdet(const Dims& dims, const ColoringMatrix& Z,
                     const IndexSelection& sel, long long samples,
                     std::uint64_t seed, double tol) {
  dims.require_construction();
  if (samples < 2) throw std::invalid_argument("mc_logdet: samples >= 2");

  const double floor_value = 2.0 * std::log(tol);
  KahanSum sum;
  double sumsq = 0.0;
  long long floored = 0;
  for (long long i = 0; i < samples; ++i) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    const ChannelInput x = sample_input(dims, rng);
    const FadingRealization s = sample_fading(dims, rng);
    const JacobianAssembly J = assemble(dims, sel, Z, x, s);
    double v;
    if (sv_ratio(J.matrix) > tol) {
      v = 2.0 * log_abs_det(J.matrix).log_abs;
    } else {
      v = floor_value;
      ++floored;
    }
    sum.add(v);
    sumsq += v * v;
  }
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.floored = floored;
  est.mean = sum.sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sumsq / static_cast<double>(samples) - est.mean * est.mean);
  est.std_err = std::sqrt(var / static_cast<double>(samples));
  return est;
}

SlopeFit mc_mi_slope(const Dims& dims, const ColoringMatrix& Z,
                     const SnrGrid& grid, long long samples, int knn_k,
                     std::uint64_t seed, int max_rl) {
  dims.validate();
  const int rl = dims.R * dims.L;
  if (rl > max_rl)
    throw std::invalid_argument(
        "mc_mi_slope: RL too large for reliable k-NN density estimation");
  if (knn_k < 1) throw std::invalid_argument("mc_mi_slope: knn_k >= 1");
  if (samples < 100LL * knn_k)
    throw std::invalid_argument("mc_mi_slope: need at least 100*k samples");

  SlopeFit fit;
  std::vector<double> log_rhos, mi_values;
  const int d = 2 * rl;
  for (std::size_t p = 0; p < grid.rhos.size(); ++p) {
    const Snr snr(grid.rhos[p]);
    const std::uint64_t point_seed = Rng::derive(seed, p);
    std::vector<double> embed(static_cast<std::size_t>(samples) * d);
    KahanSum cond_sum;
    double cond_sumsq = 0.0;
    for (long long i = 0; i < samples; ++i) {
      Rng rng(Rng::derive(point_seed, static_cast<std::uint64_t>(i)));
      const ChannelInput x = sample_input(dims, rng);
      const FadingRealization s = sample_fading(dims, rng);
      const NoiseRealization n = sample_noise(dims, rng);
      const Eigen::VectorXcd y = apply_channel(dims, snr, Z, x, s, n);
      double* row = embed.data() + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < rl; ++j) {
        row[2 * j] = y(j).real();
        row[2 * j + 1] = y(j).imag();
      }
      const double h = conditional_entropy_given_x(dims, snr, Z, x);
      cond_sum.add(h);
      cond_sumsq += h * h;
    }
    const KnnEntropy hy =
        knn_entropy(embed, static_cast<std::size_t>(samples), d, knn_k);
    const double cond_mean = cond_sum.sum / static_cast<double>(samples);
    const double cond_var = std::max(
        0.0, cond_sumsq / static_cast<double>(samples) - cond_mean * cond_mean);
    const double cond_se = std::sqrt(cond_var / static_cast<double>(samples));

    McEstimate est;
    est.samples = samples;
    est.seed = point_seed;
    est.mean = (hy.value - cond_mean) / dims.L;
    est.std_err = std::sqrt(hy.std_err * hy.std_err + cond_se * cond_se) / dims.L;
    fit.per_point.push_back({grid.rhos[p], est});
    log_rhos.push_back(std::log(grid.rhos[p]));
    mi_values.push_back(est.mean);
  }
  const LinFit lf = fit_line(log_rhos, mi_values);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  return fit;
}

SlopeFit hyx_growth_check(const Dims& dims, const ColoringMatrix& Z,
                          const SnrGrid& grid, long long samples,
                          std::uint64_t seed) {
  dims.validate();
  if (samples < 2) throw std::invalid_argument("hyx_growth_check: samples >= 2");

  SlopeFit fit;
  std::vector<double> log_rhos, means;
  for (std::size_t p = 0; p < grid.rhos.size(); ++p) {
    const Snr snr(grid.rhos[p]);
    const std::uint64_t point_seed = Rng::derive(seed, p);
    KahanSum sum;
    double sumsq = 0.0;
    for (long long i = 0; i < samples; ++i) {
      Rng rng(Rng::derive(point_seed, static_cast<std::uint64_t>(i)));
      const ChannelInput x = sample_input(dims, rng);
      const double h = conditional_entropy_given_x(dims, snr, Z, x);
      sum.add(h);
      sumsq += h * h;
    }
    McEstimate est;
    est.samples = samples;
    est.seed = point_seed;
    est.mean = sum.sum / static_cast<double>(samples);
    const double var = std::max(
        0.0, sumsq / static_cast<double>(samples) - est.mean * est.mean);
    est.std_err = std::sqrt(var / static_cast<double>(samples));
    fit.per_point.push_back({grid.rhos[p], est});
    log_rhos.push_back(std::log(grid.rhos[p]));
    means.push_back(est.mean);
  }
  const LinFit lf = fit_line(log_rhos, means);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  return fit;
}

}  // namespace prelog

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "prelog/types.hpp"

namespace testutil {

// Independent determinant oracle: Laplace expansion along the first row.
// Exponential cost, fine for the small matrices it is used on.
inline std::complex<double> cofactor_det(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {1.0, 0.0};
  if (n == 1) return m(0, 0);
  std::complex<double> det{0.0, 0.0};
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    }
    det += sign * m(0, j) * cofactor_det(sub);
    sign = -sign;
  }
  return det;
}

inline Eigen::MatrixXcd random_cmatrix(int rows, int cols, prelog::Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
  return m;
}

// Euler-Mascheroni constant by quadrature:
//   gamma = int_0^1 (1 - e^-u)/u du - int_1^inf e^-u / u du,
// evaluated with composite Simpson on [0,1] and on [1,60].
inline double gamma_by_quadrature() {
  auto simpson = [](auto f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
  };
  auto f1 = [](double u) {
    if (u < 1e-12) return 1.0;  // limit of (1 - e^-u)/u at 0
    return (1.0 - std::exp(-u)) / u;
  };
  auto f2 = [](double u) { return std::exp(-u) / u; };
  return simpson(f1, 0.0, 1.0, 2000) - simpson(f2, 1.0, 60.0, 20000);
}

}  // namespace testutil

#pragma once

#include <cstddef>
#include <vector>

namespace prelog {

// Kozachenko-Leonenko differential entropy estimate (nats) from n points in
// d real dimensions, stored row-major. Also reports a rough standard error
// from the spread of the per-point log-distance terms.
struct KnnEntropy {
  double value = 0.0;
  double std_err = 0.0;
};

KnnEntropy knn_entropy(const std::vector<double>& points, std::size_t n, int d,
                       int k);

double digamma(double x);

}  // namespace prelog

#include "prelog/knn_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace prelog {

double digamma(double x) {
  // recurrence up to the asymptotic regime, then the standard expansion
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
  return result;
}

namespace {

// static kd-tree over an index permutation; nodes are median splits
struct KdTree {
  const double* pts;
  std::size_t n;
  int d;
  std::vector<std::uint32_t> idx;

  KdTree(const double* p, std::size_t n_, int d_) : pts(p), n(n_), d(d_) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), 0u);
    build(0, n, 0);
  }

  void build(std::size_t lo, std::size_t hi, int axis) {
    if (hi - lo <= 16) return;  // leaf bucket
    const std::size_t mid = (lo + hi) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return pts[a * d + axis] < pts[b * d + axis];
                     });
    build(lo, mid, (axis + 1) % d);
    build(mid + 1, hi, (axis + 1) % d);
  }

  // squared distance to the k-th nearest neighbor of query point qi
  double knn_dist2(std::uint32_t qi, int k) const {
    std::priority_queue<double> heap;  // max-heap of best k squared distances
    search(0, n, 0, qi, k, heap);
    return heap.top();
  }

  void search(std::size_t lo, std::size_t hi, int axis, std::uint32_t qi,
              int k, std::priority_queue<double>& heap) const {
    const double* q = pts + static_cast<std::size_t>(qi) * d;
    if (hi - lo <= 16) {
      for (std::size_t i = lo; i < hi; ++i) consider(idx[i], qi, q, k, heap);
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    const std::uint32_t mi = idx[mid];
    consider(mi, qi, q, k, heap);
    const double diff = q[axis] - pts[static_cast<std::size_t>(mi) * d + axis];
    const int next = (axis + 1) % d;
    if (diff < 0.0) {
      search(lo, mid, next, qi, k, heap);
      if (static_cast<int>(heap.size()) < k || diff * diff < heap.top())
        search(mid + 1, hi, next, qi, k, heap);
    } else {
      search(mid + 1, hi, next, qi, k, heap);
      if (static_cast<int>(heap.size()) < k || diff * diff < heap.top())
        search(lo, mid, next, qi, k, heap);
    }
  }

  void consider(std::uint32_t i, std::uint32_t qi, const double* q, int k,
                std::priority_queue<double>& heap) const {
    if (i == qi) return;
    const double* p = pts + static_cast<std::size_t>(i) * d;
    double d2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double diff = q[a] - p[a];
      d2 += diff * diff;
    }
    if (static_cast<int>(heap.size()) < k) {
      heap.push(d2);
    } else if (d2 < heap.top()) {
      heap.pop();
      heap.push(d2);
    }
  }
};

double log_unit_ball_volume(int d) {
  return 0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d + 1.0);
}

}  // namespace

KnnEntropy knn_entropy(const std::vector<double>& points, std::size_t n, int d,
                       int k) {
  if (n < static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("knn_entropy: need more than k points");
  if (points.size() != n * static_cast<std::size_t>(d))
    throw std::invalid_argument("knn_entropy: point buffer size mismatch");

  KdTree tree(points.data(), n, d);

  // compensated accumulation of the per-point log-distance terms
  double sum = 0.0, comp = 0.0, sumsq = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d2 = tree.knn_dist2(i, k);
    const double term = 0.5 * d * std::log(std::max(d2, 1e-300));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sumsq += term * term;
  }
  const double mean_term = sum / static_cast<double>(n);
  const double var_term =
      std::max(0.0, sumsq / static_cast<double>(n) - mean_term * mean_term);

  KnnEntropy out;
  out.value = digamma(static_cast<double>(n)) - digamma(static_cast<double>(k)) +
              log_unit_ball_volume(d) + mean_term;
  out.std_err = std::sqrt(var_term / static_cast<double>(n));
  return out;
}

}  // namespace prelog

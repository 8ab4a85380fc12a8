#pragma once

#include <boost/rational.hpp>
#include <map>
#include <string>
#include <utility>

#include "prelog/types.hpp"

namespace prelog {

using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline long long rat_ceil(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

inline std::string rat_str(const Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double rat_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// min{T'(1-1/L), R(1-T'Q/L)}; raw value, may be negative. Requires T' <= R.
Rat chi_low(const Dims& dims, int Tprime);

// RL/(L+RQ-1)
Rat t_opt(const Dims& dims);

// max{R(1-ceil(T_opt)Q/L), floor(T_opt)(1-1/L)}
Rat eta(const Dims& dims);

// T(1-1/L) if T <= T_opt, else eta
Rat chi_star(const Dims& dims);

// (M*, M*(1-M*/L)) with M* = min{T, R, floor(L/2)}
std::pair<int, Rat> zheng_tse(const Dims& dims);

// argmax over T' in [1:min{T,R}] of chi_low(T'); ties toward smaller T'
std::pair<int, Rat> best_T(const Dims& dims);

struct PrelogReport {
  std::map<int, Rat> chi_low_per_T;
  Rat t_opt{0};
  Rat eta{0};
  Rat chi_star{0};
  Rat chi_star_clamped{0};
  int m_star = 0;
  Rat zheng_tse{0};
  int best_T = 1;
  Rat best_chi{0};
};

PrelogReport prelog_report(const Dims& dims);

}  // namespace prelog

#include "prelog/bounds.hpp"

#include <algorithm>

namespace prelog {

Rat chi_low(const Dims& dims, int Tprime) {
  dims.validate();
  if (Tprime < 1 || Tprime > dims.R)
    throw std::invalid_argument("chi_low: requires 1 <= T' <= R");
  const Rat a = Rat(Tprime) * (Rat(1) - Rat(1, dims.L));
  const Rat b = Rat(dims.R) * (Rat(1) - Rat(Tprime * dims.Q, dims.L));
  return std::min(a, b);
}

Rat t_opt(const Dims& dims) {
  dims.validate();
  return Rat(static_cast<long long>(dims.R) * dims.L,
             dims.L + static_cast<long long>(dims.R) * dims.Q - 1);
}

Rat eta(const Dims& dims) {
  dims.validate();
  const Rat topt = t_opt(dims);
  const Rat a = Rat(dims.R) * (Rat(1) - Rat(rat_ceil(topt) * dims.Q, dims.L));
  const Rat b = Rat(rat_floor(topt)) * (Rat(1) - Rat(1, dims.L));
  return std::max(a, b);
}

Rat chi_star(const Dims& dims) {
  dims.validate();
  if (Rat(dims.T) <= t_opt(dims))
    return Rat(dims.T) * (Rat(1) - Rat(1, dims.L));
  return eta(dims);
}

std::pair<int, Rat> zheng_tse(const Dims& dims) {
  dims.validate();
  const int m = std::min({dims.T, dims.R, dims.L / 2});
  return {m, Rat(m) * (Rat(1) - Rat(m, dims.L))};
}

std::pair<int, Rat> best_T(const Dims& dims) {
  dims.validate();
  int arg = 1;
  Rat best = chi_low(dims, 1);
  for (int t = 2; t <= std::min(dims.T, dims.R); ++t) {
    const Rat v = chi_low(dims, t);
    if (v > best) {
      best = v;
      arg = t;
    }
  }
  return {arg, best};
}

PrelogReport prelog_report(const Dims& dims) {
  PrelogReport rep;
  for (int t = 1; t <= std::min(dims.T, dims.R); ++t)
    rep.chi_low_per_T[t] = chi_low(dims, t);
  rep.t_opt = t_opt(dims);
  rep.eta = eta(dims);
  rep.chi_star = chi_star(dims);
  rep.chi_star_clamped = std::max(rep.chi_star, Rat(0));
  auto [m, zt] = zheng_tse(dims);
  rep.m_star = m;
  rep.zheng_tse = zt;
  auto [tb, chib] = best_T(dims);
  rep.best_T = tb;
  rep.best_chi = chib;
  return rep;
}

}  // namespace prelog

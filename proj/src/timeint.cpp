#include "enomr/timeint.hpp"

namespace enomr {

LssprkTableau lssprk_tableau(int m) {
  if (m < 2 || m > 18) throw std::invalid_argument("lSSP-RK stage count must be in [2, 18]");
  std::vector<Rational> prev{Rational(0), Rational(1)};
  for (int mm = 3; mm <= m; ++mm) {
    std::vector<Rational> cur(static_cast<std::size_t>(mm), Rational(0));
    for (int k = 1; k <= mm - 2; ++k) cur[k] = Rational(2, k) * prev[k - 1];
    cur[mm - 1] = Rational(2, mm) * prev[mm - 2];
    Rational rest = 1;
    for (int k = 1; k <= mm - 1; ++k) rest -= cur[k];
    cur[0] = rest;
    prev = std::move(cur);
  }
  return LssprkTableau{m, prev};
}

std::vector<Rational> lssprk_amplification(const LssprkTableau& tab) {
  const int m = tab.m;
  std::vector<Rational> poly(static_cast<std::size_t>(m) + 1, Rational(0));
  // (1 + z/2)^k, built incrementally
  std::vector<Rational> power{Rational(1)};
  auto add = [&](const Rational& a) {
    for (std::size_t i = 0; i < power.size(); ++i) poly[i] += a * power[i];
  };
  auto step = [&] {
    std::vector<Rational> next(power.size() + 1, Rational(0));
    for (std::size_t i = 0; i < power.size(); ++i) {
      next[i] += power[i];
      next[i + 1] += power[i] / 2;
    }
    power = std::move(next);
  };
  for (int k = 0; k <= m - 2; ++k) {
    add(tab.alphas[static_cast<std::size_t>(k)]);
    step();
  }
  step();  // the final half step on u^(m-1)
  add(tab.alphas[static_cast<std::size_t>(m - 1)]);
  return poly;
}

}  // namespace enomr

#include "ccenum/bounds.hpp"

namespace ccenum {

std::vector<BigInt> poincare_polynomial(int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  std::vector<BigInt> coef{1};
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<BigInt> next(coef.size() + 1, BigInt(0));
    for (size_t i = 0; i < coef.size(); ++i) {
      next[i] += coef[i];
      next[i + 1] += k * coef[i];
    }
    coef = std::move(next);
  }
  return coef;
}

BigInt lower_bound(int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f / 2;
}

BoundsReport bounds_report(int n) {
  BoundsReport rep;
  rep.n = n;
  rep.upper = u_of_n(n);
  rep.lower = lower_bound(n);
  rep.poincare = poincare_polynomial(n);
  if (rep.lower > rep.upper)
    throw std::logic_error("lower bound exceeds upper bound");
  return rep;
}

}  // namespace ccenum

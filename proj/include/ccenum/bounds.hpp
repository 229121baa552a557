#pragma once

#include "ccenum/fewnomial.hpp"

namespace ccenum {

struct BoundsReport {
  int n = 0;
  BigInt upper;
  BigInt lower;
  std::vector<BigInt> poincare;  // coefficients, lowest degree first
};

/// Coefficients of prod_{k=1}^{n-1} (1 + k t), lowest degree first. These are
/// the unsigned Stirling numbers of the first kind read along a row.
std::vector<BigInt> poincare_polynomial(int n);

/// n!/2, exactly.
BigInt lower_bound(int n);

BoundsReport bounds_report(int n);

}  // namespace ccenum

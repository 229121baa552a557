#pragma once

#include "ccenum/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace ccenum {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse multivariate polynomial with numeric coefficients. Monomials are
/// sorted (variable, exponent) lists, terms kept in a canonical order.
struct Polynomial {
  struct Term {
    double coeff = 0.0;
    std::vector<std::pair<int, int>> mono;  // (variable id, exponent), sorted
  };
  std::vector<Term> terms;

  void add(double coeff, std::vector<std::pair<int, int>> mono);
  int degree() const;
  double evaluate(const std::vector<double>& values) const;
  std::string to_string(const std::vector<std::string>& names) const;
};

/// The distance equations rewritten as polynomials: each power r^-(alpha+2)
/// is replaced by a variable Y_ij, and each distance r_ij is duplicated into
/// a variable Yt_ij through the linear equation r_ij - Yt_ij = 0. Y and Yt
/// play the role of the exponential variables in the fewnomial bound; alpha
/// enters only through the numeric substitution, never the system itself.
struct FewnomialSystem {
  int n = 0;
  std::vector<std::string> variable_names;  // index = variable id
  std::vector<Polynomial> equations;        // degree-3 block, then degree-1 block
  std::vector<int> degrees;                 // per equation
  int k = 0;                                // number of exponential variables

  int var_r(int i, int j) const { return DistanceVector::pair_index(n, i, j); }
  int var_y(int i, int j) const {
    return DistanceVector::pair_count(n) + DistanceVector::pair_index(n, i, j);
  }
  int var_yt(int i, int j) const {
    return 2 * DistanceVector::pair_count(n) + DistanceVector::pair_index(n, i, j);
  }
};

FewnomialSystem build_system(const PotentialParams& params);

/// Substitutes Y_ij = r_ij^-(alpha+2), Yt_ij = r_ij and evaluates every
/// equation. The degree-3 block reproduces ac_residual entrywise; the
/// degree-1 block is identically zero.
VectorXd evaluate_system(const FewnomialSystem& system, const PotentialParams& params,
                         const DistanceVector& distances);

/// prod_i n_i * (sum_i n_i + 1)^k * 2^(k(k-1)/2), exactly.
BigInt khovanskii_bound(const std::vector<int>& degrees, int k);

/// Closed form of the bound for the n-body system:
/// 3^(n(n-1)/2) (2n^2-2n+1)^(n(n-1)) 2^((n^2-n)(n^2-n-1)/2).
BigInt u_of_n(int n);

}  // namespace ccenum

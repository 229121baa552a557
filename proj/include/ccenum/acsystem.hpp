#pragma once

#include "ccenum/geometry.hpp"

namespace ccenum {

/// Mutual-distance formulation of the central-configuration equations
/// (Albouy-Chenciner). Everything here depends on the configuration only
/// through its distance vector, so the residuals are invariant under rigid
/// motions by construction.

struct ABPair {
  MatrixXd A;  // A_ij = m_i S_ij for i != j, diagonal makes column sums zero
  MatrixXd B;  // B_ij = -0.5 |q_i - q_j|^2, zero diagonal
};

DistanceVector distances_of(const Configuration& config);

/// S_ij = r_ij^-(alpha+2) - 1/M off the diagonal, S_ii = 0.
MatrixXd s_matrix(const PotentialParams& params, const DistanceVector& distances);

/// One equation per pair i < j (lexicographic order):
///   f_ij = sum_k m_k [ S_ik (r_jk^2 - r_ik^2 - r_ij^2)
///                    + S_jk (r_ik^2 - r_jk^2 - r_ij^2) ]
/// with the conventions r_ii = 0 and S_ii = 0. All entries vanish at the
/// distance vector of any lambda = 1 central configuration.
VectorXd ac_residual(const PotentialParams& params, const DistanceVector& distances);

ABPair ab_matrices(const PotentialParams& params, const Configuration& config);

/// Matrix form of the distance equations. Entry (i,j) equals -f_ij / 2, so
/// the result is symmetric and vanishes exactly at central configurations:
///   B A + A^T B - D 1^T - 1 D^T,
/// where D_i = (W B)_ii and W is A^T with its diagonal cleared.
MatrixXd ac_matrix_residual(const ABPair& pair);

}  // namespace ccenum

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace ccenum {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

/// Interaction law: homogeneity degree alpha >= 0 (alpha = 0 selects the
/// logarithmic branch) plus one mass/circulation per body. Every mass must be
/// nonzero and the mass sum must be nonzero; negative entries are allowed.
struct PotentialParams {
  double alpha = 1.0;
  VectorXd masses;

  PotentialParams(double alpha, VectorXd masses);

  int n() const { return static_cast<int>(masses.size()); }
  double total_mass() const { return masses.sum(); }
  bool all_masses_positive() const { return (masses.array() > 0.0).all(); }
};

/// n labeled points in the plane; interleaved (x0,y0,x1,y1,...) when flat.
struct Configuration {
  std::vector<Vector2d> points;

  Configuration() = default;
  explicit Configuration(std::vector<Vector2d> pts) : points(std::move(pts)) {}

  int n() const { return static_cast<int>(points.size()); }
  VectorXd flat() const;
  static Configuration from_flat(const VectorXd& x);
};

/// Pairwise distances r_ij for i < j, lexicographic pair order.
struct DistanceVector {
  int n = 0;
  std::vector<double> r;

  double operator()(int i, int j) const {
    return r[pair_index(n, i < j ? i : j, i < j ? j : i)];
  }

  static int pair_count(int n) { return n * (n - 1) / 2; }
  /// Rank of the pair (i, j), 0 <= i < j < n, in lexicographic order.
  static int pair_index(int n, int i, int j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }
};

/// Fraction of the configuration diameter below which a pair distance counts
/// as a collision.
inline constexpr double kCollisionGuard = 1e-10;

/// Throws std::domain_error when two bodies coincide or are closer than
/// kCollisionGuard times the configuration diameter.
void check_no_collision(const Configuration& config);

/// U_alpha: sum m_i m_j / r_ij^alpha for alpha > 0, sum m_i m_j log r_ij for
/// alpha = 0.
double potential(const PotentialParams& params, const Configuration& config);

Vector2d center_of_mass(const PotentialParams& params, const Configuration& config);

/// Moment of inertia about the center of mass.
double inertia(const PotentialParams& params, const Configuration& config);

/// R_i = sum_{j != i} m_j (q_j - q_i) / r_ij^(alpha+2) + q_i, stacked into a
/// 2n-vector. Vanishes exactly at a central configuration normalised to
/// lambda = 1 and centered at the origin. The identity
/// sum_i m_i R_i = M * c holds for every configuration.
VectorXd cc_residual(const PotentialParams& params, const Configuration& config);

/// Scalar G whose gradient stacks the mass-weighted residual m_i R_i.
double action_value(const PotentialParams& params, const Configuration& config);

/// Analytic 2n x 2n Hessian of action_value. Off-diagonal block (i,j) is
/// m_i m_j [I - (alpha+2) u u^T] / r_ij^(alpha+2) with u the unit separation;
/// diagonal block (i,i) is m_i I minus the sum of the (i,j) blocks.
MatrixXd cc_hessian(const PotentialParams& params, const Configuration& config);

/// Jacobian of cc_residual: cc_hessian with block row i divided by m_i.
MatrixXd cc_jacobian(const PotentialParams& params, const Configuration& config);

/// Multiplier lambda of the centered configuration. Equals U_alpha / I for
/// alpha > 0 and (sum_{i<j} m_i m_j) / I for alpha = 0.
double lambda_of(const PotentialParams& params, const Configuration& config);

/// Centers the configuration and rescales by lambda^(1/(alpha+2)) so the
/// result has lambda = 1. Throws std::domain_error when the inertia vanishes
/// or lambda is not positive.
Configuration normalize_lambda(const PotentialParams& params, const Configuration& config);

}  // namespace ccenum

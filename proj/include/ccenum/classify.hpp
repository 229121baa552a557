#pragma once

#include "ccenum/acsystem.hpp"
#include "ccenum/geometry.hpp"

#include <optional>

namespace ccenum {

/// Translation/rotation-invariant label of a lambda = 1 configuration:
/// the pair distances in lexicographic order plus the orientation sign of
/// the first affinely independent labeled triple (0 when collinear).
/// Reflection flips the orientation and keeps the distances, so mirror
/// images land in distinct classes.
struct Fingerprint {
  std::vector<double> distances;
  int orientation = 0;
};

Fingerprint fingerprint(const Configuration& config);

/// True iff every distance entry agrees within tol and the orientations are
/// equal. Classes are counted modulo translation/rotation/dilation, not
/// modulo reflection or relabeling.
bool same_class(const Fingerprint& a, const Fingerprint& b, double tol = 1e-6);

/// Strict total order used to sort class lists deterministically.
bool fingerprint_less(const Fingerprint& a, const Fingerprint& b);

struct HessianSummary {
  VectorXd eigenvalues;          // ascending
  int kernel_dim = 0;            // |eig| below tol_zero * max |eig|
  double min_nonzero_abs = 0.0;  // smallest |eigenvalue| outside the kernel
  bool nondegenerate = false;    // kernel is exactly the rotation mode
  int full_index = 0;            // negative eigenvalues of the full Hessian
  std::optional<int> reduced_index;  // shape-space index; positive masses only
};

/// Full eigen-decomposition of cc_hessian at a converged lambda = 1 central
/// configuration. Checks that the rotation generator (q_i rotated by 90
/// degrees) lies in the numeric kernel and throws std::runtime_error
/// otherwise; throws std::invalid_argument when the configuration is not a
/// lambda = 1 CC to begin with. The reduced index is the negative-eigenvalue
/// count of the Hessian restricted to the mass-orthogonal complement of the
/// translation, rotation and dilation directions.
HessianSummary classify_degeneracy(const PotentialParams& params,
                                   const Configuration& config,
                                   double tol_zero = 1e-7);

/// Centers the configuration and rotates it so the body farthest from the
/// origin lies on the positive x-axis (ties broken by lowest index).
/// Idempotent bit-for-bit.
Configuration canonicalize(const PotentialParams& params, const Configuration& config);

struct CentralConfigClass {
  int id = -1;
  Configuration canonical;
  Fingerprint fp;
  double lambda = 0.0;
  double residual_inf = 0.0;
  double ac_residual_inf = 0.0;
  double matrix_residual_fro = 0.0;
  HessianSummary hessian;
  int hits = 0;
};

/// Assembles the class record for a configuration that is already lambda = 1,
/// centered and canonicalized; computes all residual norms and the Hessian
/// summary.
CentralConfigClass build_class(const PotentialParams& params,
                               const Configuration& config, int hits = 1);

}  // namespace ccenum

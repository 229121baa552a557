#include "ccenum/classify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace ccenum {

Fingerprint fingerprint(const Configuration& config) {
  Fingerprint fp;
  const DistanceVector d = distances_of(config);
  fp.distances = d.r;
  const int n = config.n();
  fp.orientation = 0;
  for (int i = 0; i < n && fp.orientation == 0; ++i) {
    for (int j = i + 1; j < n && fp.orientation == 0; ++j) {
      for (int k = j + 1; k < n && fp.orientation == 0; ++k) {
        const Vector2d a = config.points[j] - config.points[i];
        const Vector2d b = config.points[k] - config.points[i];
        const double cross = a.x() * b.y() - a.y() * b.x();
        if (std::abs(cross) > 1e-8 * a.norm() * b.norm())
          fp.orientation = cross > 0 ? 1 : -1;
      }
    }
  }
  return fp;
}

bool same_class(const Fingerprint& a, const Fingerprint& b, double tol) {
  if (a.orientation != b.orientation) return false;
  if (a.distances.size() != b.distances.size()) return false;
  for (size_t i = 0; i < a.distances.size(); ++i)
    if (std::abs(a.distances[i] - b.distances[i]) >= tol) return false;
  return true;
}

bool fingerprint_less(const Fingerprint& a, const Fingerprint& b) {
  if (a.orientation != b.orientation) return a.orientation < b.orientation;
  return std::lexicographical_compare(a.distances.begin(), a.distances.end(),
                                      b.distances.begin(), b.distances.end());
}

Configuration canonicalize(const PotentialParams& params, const Configuration& config) {
  Configuration out = config;
  const int n = out.n();
  double scale = 0.0;
  for (const auto& p : out.points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const Vector2d c = center_of_mass(params, out);
  // skip the subtraction when already centered so the map is idempotent
  if (c.cwiseAbs().maxCoeff() > 1e-13 * scale) {
    for (auto& p : out.points) p -= c;
  }
  int pivot = 0;
  double best = out.points[0].norm();
  for (int i = 1; i < n; ++i) {
    const double r = out.points[i].norm();
    if (r > best * (1.0 + 1e-12)) {
      best = r;
      pivot = i;
    }
  }
  const double theta = std::atan2(out.points[pivot].y(), out.points[pivot].x());
  if (theta != 0.0) {
    const double ct = std::cos(theta), st = std::sin(theta);
    for (auto& p : out.points)
      p = Vector2d(ct * p.x() + st * p.y(), -st * p.x() + ct * p.y());
    out.points[pivot] = Vector2d(best, 0.0);  // exact by rotation invariance
  }
  return out;
}

HessianSummary classify_degeneracy(const PotentialParams& params,
                                   const Configuration& config, double tol_zero) {
  const VectorXd res = cc_residual(params, config);
  if (res.lpNorm<Eigen::Infinity>() > 1e-6)
    throw std::invalid_argument(
        "classify_degeneracy: configuration is not a lambda = 1 central "
        "configuration (residual too large)");

  const int n = config.n();
  const int dim = 2 * n;
  MatrixXd h = cc_hessian(params, config);
  h = 0.5 * (h + h.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("classify_degeneracy: eigendecomposition failed");

  HessianSummary sum;
  sum.eigenvalues = eig.eigenvalues();
  const double max_abs = sum.eigenvalues.cwiseAbs().maxCoeff();
  if (max_abs == 0.0)
    throw std::runtime_error("classify_degeneracy: zero Hessian");
  const double thresh = tol_zero * max_abs;

  sum.kernel_dim = 0;
  sum.full_index = 0;
  sum.min_nonzero_abs = max_abs;
  for (int i = 0; i < dim; ++i) {
    const double ev = sum.eigenvalues(i);
    if (std::abs(ev) < thresh)
      ++sum.kernel_dim;
    else
      sum.min_nonzero_abs = std::min(sum.min_nonzero_abs, std::abs(ev));
    if (ev < -thresh) ++sum.full_index;
  }

  // the rotation generator must sit in the numeric kernel
  VectorXd vrot(dim);
  for (int i = 0; i < n; ++i) {
    vrot(2 * i) = -config.points[i].y();
    vrot(2 * i + 1) = config.points[i].x();
  }
  vrot.normalize();
  VectorXd proj = vrot;
  for (int i = 0; i < dim; ++i) {
    if (std::abs(sum.eigenvalues(i)) < thresh) {
      const VectorXd v = eig.eigenvectors().col(i);
      proj -= v.dot(vrot) * v;
    }
  }
  if (sum.kernel_dim == 0 || proj.norm() > 1e-6)
    throw std::runtime_error(
        "classify_degeneracy: inconsistent spectrum, rotation mode not "
        "resolved in the numeric kernel");

  sum.nondegenerate = (sum.kernel_dim == 1);

  if (params.all_masses_positive()) {
    if (n == 2) {
      sum.reduced_index = 0;
    } else {
      // shape directions: mass-orthogonal complement of the translations,
      // the rotation generator and the dilation direction
      MatrixXd span(dim, 4);
      span.setZero();
      for (int i = 0; i < n; ++i) {
        span(2 * i, 0) = 1.0;
        span(2 * i + 1, 1) = 1.0;
        span(2 * i, 2) = -config.points[i].y();
        span(2 * i + 1, 2) = config.points[i].x();
        span(2 * i, 3) = config.points[i].x();
        span(2 * i + 1, 3) = config.points[i].y();
      }
      MatrixXd weighted = span;  // D * span with D = diag(masses) per body
      for (int i = 0; i < n; ++i) weighted.middleRows(2 * i, 2) *= params.masses[i];
      Eigen::JacobiSVD<MatrixXd> svd(weighted.transpose(), Eigen::ComputeFullV);
      const MatrixXd shape = svd.matrixV().rightCols(dim - 4);
      const MatrixXd reduced = shape.transpose() * h * shape;
      Eigen::SelfAdjointEigenSolver<MatrixXd> red(0.5 * (reduced + reduced.transpose()));
      int idx = 0;
      for (int i = 0; i < red.eigenvalues().size(); ++i)
        if (red.eigenvalues()(i) < -thresh) ++idx;
      sum.reduced_index = idx;
    }
  }
  return sum;
}

CentralConfigClass build_class(const PotentialParams& params,
                               const Configuration& config, int hits) {
  CentralConfigClass cls;
  cls.canonical = config;
  cls.fp = fingerprint(config);
  cls.lambda = lambda_of(params, config);
  cls.residual_inf = cc_residual(params, config).lpNorm<Eigen::Infinity>();
  const DistanceVector d = distances_of(config);
  cls.ac_residual_inf = ac_residual(params, d).lpNorm<Eigen::Infinity>();
  cls.matrix_residual_fro = ac_matrix_residual(ab_matrices(params, config)).norm();
  cls.hessian = classify_degeneracy(params, config);
  cls.hits = hits;
  return cls;
}

}  // namespace ccenum

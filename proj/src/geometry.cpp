#include "ccenum/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ccenum {

PotentialParams::PotentialParams(double alpha_, VectorXd masses_)
    : alpha(alpha_), masses(std::move(masses_)) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument("alpha must be finite and >= 0");
  if (masses.size() < 2)
    throw std::invalid_argument("need at least 2 bodies");
  for (int i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] == 0.0)
      throw std::invalid_argument("mass must be nonzero (body " +
                                  std::to_string(i + 1) + ")");
  }
  if (masses.sum() == 0.0)
    throw std::invalid_argument("sum of masses must be nonzero");
}

VectorXd Configuration::flat() const {
  VectorXd x(2 * n());
  for (int i = 0; i < n(); ++i) x.segment<2>(2 * i) = points[i];
  return x;
}

Configuration Configuration::from_flat(const VectorXd& x) {
  Configuration c;
  c.points.resize(static_cast<size_t>(x.size() / 2));
  for (int i = 0; i < x.size() / 2; ++i) c.points[i] = x.segment<2>(2 * i);
  return c;
}

void check_no_collision(const Configuration& config) {
  const int n = config.n();
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  int bi = 0, bj = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = (config.points[j] - config.points[i]).norm();
      if (r < rmin) {
        rmin = r;
        bi = i;
        bj = j;
      }
      rmax = std::max(rmax, r);
    }
  }
  if (rmin == 0.0 || rmin < kCollisionGuard * rmax)
    throw std::domain_error("collision: bodies " + std::to_string(bi + 1) +
                            " and " + std::to_string(bj + 1) +
                            " are closer than the collision guard");
}

double potential(const PotentialParams& params, const Configuration& config) {
  check_no_collision(config);
  const int n = config.n();
  double u = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = (config.points[j] - config.points[i]).norm();
      const double mm = params.masses[i] * params.masses[j];
      u += params.alpha > 0.0 ? mm * std::pow(r, -params.alpha) : mm * std::log(r);
    }
  }
  return u;
}

Vector2d center_of_mass(const PotentialParams& params, const Configuration& config) {
  Vector2d c = Vector2d::Zero();
  for (int i = 0; i < config.n(); ++i) c += params.masses[i] * config.points[i];
  return c / params.total_mass();
}

double inertia(const PotentialParams& params, const Configuration& config) {
  const Vector2d c = center_of_mass(params, config);
  double s = 0.0;
  for (int i = 0; i < config.n(); ++i)
    s += params.masses[i] * (config.points[i] - c).squaredNorm();
  return s;
}

VectorXd cc_residual(const PotentialParams& params, const Configuration& config) {
  check_no_collision(config);
  const int n = config.n();
  const double e = params.alpha + 2.0;
  VectorXd res(2 * n);
  for (int i = 0; i < n; ++i) {
    Vector2d acc = config.points[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vector2d d = config.points[j] - config.points[i];
      acc += params.masses[j] * d * std::pow(d.norm(), -e);
    }
    res.segment<2>(2 * i) = acc;
  }
  return res;
}

double action_value(const PotentialParams& params, const Configuration& config) {
  const double u = potential(params, config);
  const double phi = params.alpha > 0.0 ? u / params.alpha : -u;
  double i0 = 0.0;  // inertia about the origin, not the center of mass
  for (int i = 0; i < config.n(); ++i)
    i0 += params.masses[i] * config.points[i].squaredNorm();
  return phi + 0.5 * i0;
}

namespace {

// m_j-free interaction block [I - (alpha+2) u u^T] / r^(alpha+2)
Matrix2d pair_block(double alpha, const Vector2d& qi, const Vector2d& qj) {
  const Vector2d d = qj - qi;
  const double r = d.norm();
  const Vector2d u = d / r;
  return std::pow(r, -(alpha + 2.0)) *
         (Matrix2d::Identity() - (alpha + 2.0) * (u * u.transpose()));
}

}  // namespace

MatrixXd cc_hessian(const PotentialParams& params, const Configuration& config) {
  check_no_collision(config);
  const int n = config.n();
  MatrixXd h = MatrixXd::Zero(2 * n, 2 * n);
  std::vector<Matrix2d> diag(n, Matrix2d::Zero());
  for (int i = 0; i < n; ++i)
    diag[i] = params.masses[i] * Matrix2d::Identity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix2d b = params.masses[i] * params.masses[j] *
                         pair_block(params.alpha, config.points[i], config.points[j]);
      h.block<2, 2>(2 * i, 2 * j) = b;
      h.block<2, 2>(2 * j, 2 * i) = b;
      diag[i] -= b;
      diag[j] -= b;
    }
  }
  for (int i = 0; i < n; ++i) h.block<2, 2>(2 * i, 2 * i) = diag[i];
  return h;
}

MatrixXd cc_jacobian(const PotentialParams& params, const Configuration& config) {
  check_no_collision(config);
  const int n = config.n();
  MatrixXd jac = MatrixXd::Zero(2 * n, 2 * n);
  std::vector<Matrix2d> diag(n, Matrix2d::Identity());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix2d b = pair_block(params.alpha, config.points[i], config.points[j]);
      jac.block<2, 2>(2 * i, 2 * j) = params.masses[j] * b;
      jac.block<2, 2>(2 * j, 2 * i) = params.masses[i] * b;
      diag[i] -= params.masses[j] * b;
      diag[j] -= params.masses[i] * b;
    }
  }
  for (int i = 0; i < n; ++i) jac.block<2, 2>(2 * i, 2 * i) = diag[i];
  return jac;
}

double lambda_of(const PotentialParams& params, const Configuration& config) {
  const double iner = inertia(params, config);
  if (iner == 0.0)
    throw std::domain_error("degenerate normalization: zero inertia");
  double num;
  if (params.alpha > 0.0) {
    num = potential(params, config);
  } else {
    num = 0.0;
    for (int i = 0; i < config.n(); ++i)
      for (int j = i + 1; j < config.n(); ++j)
        num += params.masses[i] * params.masses[j];
  }
  return num / iner;
}

Configuration normalize_lambda(const PotentialParams& params, const Configuration& config) {
  const double lam = lambda_of(params, config);
  if (!std::isfinite(lam) || lam <= 0.0)
    throw std::domain_error("degenerate normalization: lambda must be positive");
  const double s = std::pow(lam, 1.0 / (params.alpha + 2.0));
  const Vector2d c = center_of_mass(params, config);
  Configuration out = config;
  for (auto& p : out.points) p = s * (p - c);
  return out;
}

}  // namespace ccenum

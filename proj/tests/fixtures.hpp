// Closed-form central-configuration fixtures shared across the test suites.
#pragma once

#include "ccenum/geometry.hpp"

#include <cmath>

namespace fixtures {

using ccenum::Configuration;
using ccenum::PotentialParams;
using ccenum::Vector2d;
using ccenum::VectorXd;

inline PotentialParams params(double alpha, std::initializer_list<double> masses) {
  VectorXd m(static_cast<int>(masses.size()));
  int i = 0;
  for (double v : masses) m(i++) = v;
  return PotentialParams(alpha, std::move(m));
}

/// Two bodies on the x-axis, separation r = M^(1/(alpha+2)), centered: the
/// unique lambda = 1 two-body class.
inline Configuration two_body(const PotentialParams& p) {
  const double m1 = p.masses[0], m2 = p.masses[1];
  const double M = m1 + m2;
  const double r = std::pow(M, 1.0 / (p.alpha + 2.0));
  Configuration c;
  c.points = {Vector2d(-m2 * r / M, 0.0), Vector2d(m1 * r / M, 0.0)};
  return c;
}

/// Equilateral triangle with side M^(1/(alpha+2)) centered at the mass
/// centroid: the lambda = 1 Lagrange class for any admissible masses.
inline Configuration equilateral(const PotentialParams& p, double side_scale = 1.0) {
  const double M = p.total_mass();
  const double s = side_scale * std::pow(M, 1.0 / (p.alpha + 2.0));
  Configuration c;
  c.points = {Vector2d(0.0, 0.0), Vector2d(s, 0.0),
              Vector2d(0.5 * s, 0.5 * std::sqrt(3.0) * s)};
  Vector2d centroid = Vector2d::Zero();
  for (int i = 0; i < 3; ++i) centroid += p.masses[i] * c.points[i];
  centroid /= M;
  for (auto& q : c.points) q -= centroid;
  return c;
}

/// Symmetric collinear three-body class for equal unit masses and alpha = 1:
/// bodies at -d, 0, d with d = (5/4)^(1/3).
inline Configuration euler_symmetric() {
  const double d = std::cbrt(5.0 / 4.0);
  Configuration c;
  c.points = {Vector2d(-d, 0.0), Vector2d(0.0, 0.0), Vector2d(d, 0.0)};
  return c;
}

inline Configuration rotated(const Configuration& c, double theta) {
  Configuration out = c;
  const double ct = std::cos(theta), st = std::sin(theta);
  for (auto& p : out.points)
    p = Vector2d(ct * p.x() - st * p.y(), st * p.x() + ct * p.y());
  return out;
}

inline Configuration translated(const Configuration& c, const Vector2d& v) {
  Configuration out = c;
  for (auto& p : out.points) p += v;
  return out;
}

inline Configuration scaled(const Configuration& c, double s) {
  Configuration out = c;
  for (auto& p : out.points) p *= s;
  return out;
}

inline Configuration reflected(const Configuration& c) {
  Configuration out = c;
  for (auto& p : out.points) p = Vector2d(p.x(), -p.y());
  return out;
}

}  // namespace fixtures

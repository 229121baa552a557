#include "ccenum/acsystem.hpp"

#include <cmath>

namespace ccenum {

DistanceVector distances_of(const Configuration& config) {
  const int n = config.n();
  DistanceVector d;
  d.n = n;
  d.r.reserve(DistanceVector::pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d.r.push_back((config.points[j] - config.points[i]).norm());
  return d;
}

MatrixXd s_matrix(const PotentialParams& params, const DistanceVector& distances) {
  const int n = distances.n;
  const double minv = 1.0 / params.total_mass();
  MatrixXd s = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = std::pow(distances(i, j), -(params.alpha + 2.0)) - minv;
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

VectorXd ac_residual(const PotentialParams& params, const DistanceVector& distances) {
  const int n = distances.n;
  const MatrixXd s = s_matrix(params, distances);
  auto r2 = [&](int a, int b) {
    if (a == b) return 0.0;
    const double r = distances(a, b);
    return r * r;
  };
  VectorXd f(DistanceVector::pair_count(n));
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++idx) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        acc += params.masses[k] *
               (s(i, k) * (r2(j, k) - r2(i, k) - r2(i, j)) +
                s(j, k) * (r2(i, k) - r2(j, k) - r2(i, j)));
      }
      f(idx) = acc;
    }
  }
  return f;
}

ABPair ab_matrices(const PotentialParams& params, const Configuration& config) {
  check_no_collision(config);
  const int n = config.n();
  const MatrixXd s = s_matrix(params, distances_of(config));
  ABPair pair;
  pair.A = MatrixXd::Zero(n, n);
  pair.B = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pair.A(i, j) = params.masses[i] * s(i, j);
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != j) col += pair.A(k, j);
    pair.A(j, j) = -col;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double b = -0.5 * (config.points[i] - config.points[j]).squaredNorm();
      pair.B(i, j) = b;
      pair.B(j, i) = b;
    }
  return pair;
}

MatrixXd ac_matrix_residual(const ABPair& pair) {
  const int n = static_cast<int>(pair.A.rows());
  MatrixXd w = pair.A.transpose();
  w.diagonal().setZero();
  const VectorXd d = (w * pair.B).diagonal();
  MatrixXd res = pair.B * pair.A + pair.A.transpose() * pair.B;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      res(i, j) -= d(i) + d(j);
  return res;
}

}  // namespace ccenum

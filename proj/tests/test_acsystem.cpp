#include "ccenum/acsystem.hpp"

#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace ccenum;

TEST_CASE("distances_of basics") {
  Configuration c;
  c.points = {Vector2d(0, 0), Vector2d(3, 4)};
  CHECK(distances_of(c)(0, 1) == doctest::Approx(5.0).epsilon(1e-15));

  auto p = fixtures::params(1.0, {1, 1, 1});
  const Configuration eq = fixtures::equilateral(p);
  const double side = std::cbrt(3.0);
  const DistanceVector d = distances_of(eq);
  for (double r : d.r) CHECK(r == doctest::Approx(side).epsilon(1e-14));

  const DistanceVector dr = distances_of(fixtures::rotated(eq, 1.234));
  for (size_t i = 0; i < d.r.size(); ++i)
    CHECK(std::abs(d.r[i] - dr.r[i]) < 1e-12);
}

TEST_CASE("s_matrix vanishes at the two-body and equilateral classes") {
  auto p2 = fixtures::params(1.0, {1, 1});
  const MatrixXd s2 = s_matrix(p2, distances_of(fixtures::two_body(p2)));
  CHECK(std::abs(s2(0, 1)) < 1e-15);
  CHECK(s2(0, 0) == 0.0);
  CHECK(s2(1, 1) == 0.0);

  for (double alpha : {0.0, 1.0, 2.7}) {
    auto p3 = fixtures::params(alpha, {1, 1, 1});
    const MatrixXd s3 = s_matrix(p3, distances_of(fixtures::equilateral(p3)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(s3(i, j)) < 1e-14);
  }
}

TEST_CASE("ac_residual vanishes exactly at classes") {
  for (double alpha : {0.0, 0.5, 1.0, 3.1}) {
    auto p2 = fixtures::params(alpha, {1.0, 2.5});
    CHECK(ac_residual(p2, distances_of(fixtures::two_body(p2))).lpNorm<Eigen::Infinity>() <
          1e-12);
    auto p3 = fixtures::params(alpha, {1, 1, 1});
    CHECK(ac_residual(p3, distances_of(fixtures::equilateral(p3))).lpNorm<Eigen::Infinity>() <
          1e-12);
  }
  // symmetric collinear three-body class
  auto p = fixtures::params(1.0, {1, 1, 1});
  CHECK(ac_residual(p, distances_of(fixtures::euler_symmetric())).lpNorm<Eigen::Infinity>() <
        1e-12);
}

TEST_CASE("two-body residual closed form -2 r^2 M S12") {
  auto p = fixtures::params(1.2, {1.0, 3.0});
  for (double r : {0.5, 1.0, 2.0}) {
    DistanceVector d;
    d.n = 2;
    d.r = {r};
    const double s12 = std::pow(r, -(p.alpha + 2.0)) - 1.0 / p.total_mass();
    const VectorXd f = ac_residual(p, d);
    CHECK(f(0) == doctest::Approx(-2.0 * r * r * p.total_mass() * s12).epsilon(1e-13));
  }
}

TEST_CASE("ac_residual brute-force oracle on a non-class configuration") {
  auto p = fixtures::params(1.0, {1, 1, 1});
  Configuration c;
  c.points = {Vector2d(0, 0), Vector2d(1, 0), Vector2d(0, 1)};
  const DistanceVector d = distances_of(c);
  const VectorXd f = ac_residual(p, d);
  CHECK(f.lpNorm<Eigen::Infinity>() > 0.1);

  // independent re-evaluation straight from the definition
  const int n = 3;
  auto s_of = [&](int a, int b) {
    if (a == b) return 0.0;
    return std::pow(d(a, b), -3.0) - 1.0 / 3.0;
  };
  auto r2 = [&](int a, int b) { return a == b ? 0.0 : d(a, b) * d(a, b); };
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++idx) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += s_of(i, k) * (r2(j, k) - r2(i, k) - r2(i, j)) +
               s_of(j, k) * (r2(i, k) - r2(j, k) - r2(i, j));
      CHECK(f(idx) == doctest::Approx(acc).epsilon(1e-14));
    }
  }
}

TEST_CASE("ac_residual depends only on distances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    VectorXd m(n);
    for (int i = 0; i < n; ++i) m(i) = oracles::uniform(rng, 0.3, 2.0);
    PotentialParams p(oracles::uniform(rng, 0.0, 2.5), m);
    const Configuration c = oracles::random_config(n, rng);
    const Configuration moved = fixtures::translated(
        fixtures::rotated(c, oracles::uniform(rng, 0, 6.28)),
        Vector2d(oracles::uniform(rng, -3, 3), oracles::uniform(rng, -3, 3)));
    const VectorXd f1 = ac_residual(p, distances_of(c));
    const VectorXd f2 = ac_residual(p, distances_of(moved));
    CHECK((f1 - f2).lpNorm<Eigen::Infinity>() <= 1e-10 * std::max(1.0, f1.norm()));
  }
}

TEST_CASE("ab_matrices invariants") {
  std::mt19937_64 rng(57);
  VectorXd m(4);
  m << 0.7, 1.1, 2.0, 0.4;
  PotentialParams p(1.6, m);
  const Configuration c = oracles::random_config(4, rng);
  const ABPair pair = ab_matrices(p, c);
  // column sums of A vanish, B symmetric with zero diagonal
  for (int j = 0; j < 4; ++j) CHECK(std::abs(pair.A.col(j).sum()) < 1e-12);
  CHECK((pair.B - pair.B.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(pair.B(i, i) == 0.0);
}

TEST_CASE("matrix residual vanishes at classes and is symmetric") {
  // two-body class: S12 = 0 makes A = 0
  auto p2 = fixtures::params(1.0, {1, 1});
  const ABPair two = ab_matrices(p2, fixtures::two_body(p2));
  CHECK(two.A.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(ac_matrix_residual(two).norm() < 1e-12);

  // collinear class with nonzero A
  auto p3 = fixtures::params(1.0, {1, 1, 1});
  const ABPair euler = ab_matrices(p3, fixtures::euler_symmetric());
  CHECK(euler.A.cwiseAbs().maxCoeff() > 0.1);
  CHECK(ac_matrix_residual(euler).norm() < 1e-12);

  // random non-class configuration: residual clearly nonzero, still symmetric
  std::mt19937_64 rng(11);
  const Configuration c = oracles::random_config(3, rng);
  const MatrixXd res = ac_matrix_residual(ab_matrices(p3, c));
  CHECK(res.norm() > 1e-3);
  CHECK((res - res.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matrix residual entries equal -f_ij/2") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    VectorXd m(n);
    for (int i = 0; i < n; ++i)
      m(i) = oracles::uniform(rng, 0.2, 2.0) * (rng() % 5 == 0 ? -1.0 : 1.0);
    if (std::abs(m.sum()) < 0.2) continue;  // keep M well away from zero
    PotentialParams p(oracles::uniform(rng, 0.0, 3.0), m);
    const Configuration c = oracles::random_config(n, rng);
    const VectorXd f = ac_residual(p, distances_of(c));
    const MatrixXd res = ac_matrix_residual(ab_matrices(p, c));
    const double scale = std::max(1.0, f.lpNorm<Eigen::Infinity>());
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(res(i, i)) <= 1e-11 * scale);
      for (int j = i + 1; j < n; ++j, ++idx)
        CHECK(std::abs(res(i, j) + 0.5 * f(idx)) <= 1e-11 * scale);
    }
  }
}

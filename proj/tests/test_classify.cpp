#include "ccenum/classify.hpp"

#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace ccenum;

TEST_CASE("fingerprint invariance and orientation") {
  auto p = fixtures::params(1.0, {1, 1, 1});
  const Configuration eq = fixtures::equilateral(p);
  const Fingerprint base = fingerprint(eq);
  CHECK(base.orientation != 0);

  const Fingerprint rot = fingerprint(fixtures::rotated(eq, 1.234));
  CHECK(rot.orientation == base.orientation);
  for (size_t i = 0; i < base.distances.size(); ++i)
    CHECK(std::abs(base.distances[i] - rot.distances[i]) < 1e-12);

  const Fingerprint mir = fingerprint(fixtures::reflected(eq));
  CHECK(mir.orientation == -base.orientation);
  for (size_t i = 0; i < base.distances.size(); ++i)
    CHECK(std::abs(base.distances[i] - mir.distances[i]) < 1e-14);

  CHECK(fingerprint(fixtures::euler_symmetric()).orientation == 0);
}

TEST_CASE("same_class semantics") {
  auto p = fixtures::params(1.0, {1, 1, 1});
  const Configuration eq = fixtures::equilateral(p);
  const Fingerprint a = fingerprint(eq);
  const Fingerprint b = fingerprint(fixtures::reflected(eq));
  CHECK_FALSE(same_class(a, b));  // the two orientations are distinct classes
  CHECK(same_class(a, fingerprint(fixtures::rotated(eq, 0.37))));

  // two distinct collinear orderings differ in the fingerprint
  const double d = std::cbrt(5.0 / 4.0);
  Configuration mid2 = fixtures::euler_symmetric();  // body 2 in the middle
  Configuration mid1;
  mid1.points = {Vector2d(0, 0), Vector2d(-d, 0), Vector2d(d, 0)};
  CHECK_FALSE(same_class(fingerprint(mid2), fingerprint(mid1)));
}

TEST_CASE("canonicalize is idempotent bit-for-bit") {
  std::mt19937_64 rng(5);
  auto p = fixtures::params(1.0, {1.0, 2.0, 0.7});
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration c = oracles::random_config(3, rng);
    const Configuration once = canonicalize(p, c);
    const Configuration twice = canonicalize(p, once);
    for (int i = 0; i < 3; ++i) {
      CHECK(once.points[i].x() == twice.points[i].x());
      CHECK(once.points[i].y() == twice.points[i].y());
    }
    // farthest body on the positive x-axis
    int far = 0;
    for (int i = 1; i < 3; ++i)
      if (once.points[i].norm() > once.points[far].norm() * (1 + 1e-12)) far = i;
    CHECK(once.points[far].y() == 0.0);
    CHECK(once.points[far].x() > 0.0);
  }

  // exact radius tie: lowest index wins and stays the pivot
  auto p2 = fixtures::params(1.0, {1, 1});
  const Configuration two = fixtures::two_body(p2);
  const Configuration once = canonicalize(p2, fixtures::rotated(two, 0.9));
  const Configuration twice = canonicalize(p2, once);
  CHECK(once.points[0].x() == twice.points[0].x());
  CHECK(once.points[0].x() > 0.0);
  CHECK(once.points[0].y() == 0.0);
}

TEST_CASE("classify_degeneracy on the two-body class") {
  auto p = fixtures::params(1.0, {1, 1});
  const HessianSummary sum = classify_degeneracy(p, fixtures::two_body(p));
  CHECK(sum.kernel_dim == 1);
  CHECK(sum.nondegenerate);
  CHECK(sum.full_index == 0);
  REQUIRE(sum.reduced_index.has_value());
  CHECK(*sum.reduced_index == 0);
}

TEST_CASE("classify_degeneracy rejects a non-normalized configuration") {
  auto p = fixtures::params(1.0, {1, 1, 1});
  const Configuration off = fixtures::scaled(fixtures::equilateral(p), 1.5);
  CHECK_THROWS_AS(classify_degeneracy(p, off), std::invalid_argument);
}

TEST_CASE("reduced index against the finite-difference chart oracle") {
  auto p = fixtures::params(1.0, {1, 1, 1});

  const HessianSummary lagrange = classify_degeneracy(p, fixtures::equilateral(p));
  REQUIRE(lagrange.reduced_index.has_value());
  CHECK(*lagrange.reduced_index == 0);
  CHECK(lagrange.full_index == *lagrange.reduced_index);
  CHECK(oracles::reduced_index_fd(p, fixtures::equilateral(p)) == 0);

  const HessianSummary euler = classify_degeneracy(p, fixtures::euler_symmetric());
  REQUIRE(euler.reduced_index.has_value());
  CHECK(*euler.reduced_index == 1);
  CHECK(euler.full_index == *euler.reduced_index);
  CHECK(oracles::reduced_index_fd(p, fixtures::euler_symmetric()) == 1);

  // the vortex case keeps the same census
  auto pv = fixtures::params(0.0, {1, 1, 1});
  const HessianSummary lv = classify_degeneracy(pv, fixtures::equilateral(pv));
  CHECK(*lv.reduced_index == 0);
  CHECK(oracles::reduced_index_fd(pv, fixtures::equilateral(pv)) == 0);
}

TEST_CASE("negative masses report no reduced index") {
  auto p = fixtures::params(1.0, {1.0, 1.0, -0.5});
  // equilateral with side M^(1/(alpha+2)) is a class for these masses too
  const Configuration c = fixtures::equilateral(p);
  REQUIRE(cc_residual(p, c).lpNorm<Eigen::Infinity>() < 1e-12);
  const HessianSummary sum = classify_degeneracy(p, c);
  CHECK_FALSE(sum.reduced_index.has_value());
  CHECK(sum.kernel_dim >= 1);
}

TEST_CASE("build_class records residuals and spectrum") {
  auto p = fixtures::params(1.0, {1, 1, 1});
  const Configuration canon = canonicalize(p, fixtures::equilateral(p));
  const CentralConfigClass cls = build_class(p, canon, 7);
  CHECK(cls.hits == 7);
  CHECK(cls.lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cls.residual_inf < 1e-12);
  CHECK(cls.ac_residual_inf < 1e-12);
  CHECK(cls.matrix_residual_fro < 1e-12);
  CHECK(cls.hessian.nondegenerate);
  CHECK(cls.fp.orientation != 0);
}

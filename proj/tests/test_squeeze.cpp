#include <doctest.h>

#include <cmath>

#include "symcap/errors.hpp"
#include "symcap/squeeze.hpp"

using namespace symcap;

namespace {

SymplecticMatrix shear() {
  Matrix s = Matrix::Identity(4, 4);
  s(2, 1) = 1.0;
  s(3, 0) = 1.0;
  return SymplecticMatrix::from(s);
}

// Pair rotation in plane j composed with an x-p scaling: the preimage of
// plane 1 stays J-invariant.
SymplecticMatrix j_invariant_example() {
  Matrix s = Matrix::Identity(4, 4);
  s(1, 1) = 3.0;
  s(3, 3) = 1.0 / 3.0;
  return SymplecticMatrix::from(s);
}

}  // namespace

TEST_CASE("identity shadows") {
  const auto id = SymplecticMatrix::identity(3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(projection_area(id, 1.0, j) == doctest::Approx(M_PI));
    CHECK(intersection_area(id, 2.0, j) == doctest::Approx(4 * M_PI));
  }
}

TEST_CASE("planar maps preserve both areas") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_symplectic(1, seed);
    CHECK(projection_area(s, 1.3, 1) == doctest::Approx(M_PI * 1.69).epsilon(1e-12));
    CHECK(intersection_area(s, 1.3, 1) == doctest::Approx(M_PI * 1.69).epsilon(1e-12));
  }
}

TEST_CASE("shear example") {
  const auto s = shear();
  const double r = 1.5;
  CHECK(projection_area(s, r, 1) == doctest::Approx(std::sqrt(2.0) * M_PI * r * r).epsilon(1e-14));
  CHECK(intersection_area(s, r, 1) == doctest::Approx(M_PI * r * r / std::sqrt(2.0)).epsilon(1e-14));
  // The product of the two areas is (pi R^2)^2 on every plane.
  for (int j = 1; j <= 2; ++j)
    CHECK(projection_area(s, r, j) * intersection_area(s, r, j) ==
          doctest::Approx(std::pow(M_PI * r * r, 2)).epsilon(1e-12));
}

TEST_CASE("J-invariant preimage plane gives equality") {
  const auto s = j_invariant_example();
  CHECK(intersection_area(s, 1.0, 1) == doctest::Approx(M_PI));
  CHECK(projection_area(s, 1.0, 1) == doctest::Approx(M_PI));
}

TEST_CASE("areas scale as R^2") {
  const auto s = random_symplectic(3, 17);
  for (int j = 1; j <= 3; ++j) {
    const double p1 = projection_area(s, 1.0, j), i1 = intersection_area(s, 1.0, j);
    for (double r : {0.1, 2.0, 9.0}) {
      CHECK(projection_area(s, r, j) == doctest::Approx(r * r * p1).epsilon(1e-12));
      CHECK(intersection_area(s, r, j) == doctest::Approx(r * r * i1).epsilon(1e-12));
    }
  }
}

TEST_CASE("shadow bounds hold for random maps") {
  for (int n : {2, 3, 4, 6}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto s = random_symplectic(n, seed, 1.0);
      for (int j = 1; j <= n; ++j) {
        const double p = projection_area(s, 1.0, j), i = intersection_area(s, 1.0, j);
        CHECK(p >= M_PI * (1 - 1e-9));
        CHECK(i <= M_PI * (1 + 1e-9));
        CHECK(i > 0.0);
        CHECK(i <= p);
      }
    }
  }
}

TEST_CASE("shadow report and translations") {
  const auto s = random_symplectic(2, 3);
  Vector shift(4);
  shift << 1.0, -2.0, 0.5, 4.0;
  const auto plain = shadow_report(s, Vector::Zero(4), 1.0, 2);
  const auto moved = shadow_report(s, shift, 1.0, 2);
  CHECK(moved.projection_area == plain.projection_area);
  CHECK(moved.intersection_area == plain.intersection_area);
  CHECK(moved.shadow_center(0) == doctest::Approx(-2.0));
  CHECK(moved.shadow_center(1) == doctest::Approx(4.0));
  CHECK(plain.projection_ratio == doctest::Approx(plain.projection_area / M_PI));
  CHECK_THROWS_AS(shadow_report(s, Vector::Zero(4), 1.0, 3), Error);
  CHECK_THROWS_AS(projection_area(s, 0.0, 1), Error);
}

TEST_CASE("batch verification") {
  NonsqueezeConfig one;
  one.n = 1;
  one.trials = 100;
  const auto r1 = nonsqueeze_verify(one);
  CHECK(r1.violations == 0);
  CHECK(r1.min_projection_ratio == doctest::Approx(1.0).epsilon(1e-9));

  NonsqueezeConfig three;
  three.n = 3;
  three.trials = 2000;
  three.seed = 42;
  const auto r3 = nonsqueeze_verify(three);
  CHECK(r3.violations == 0);
  CHECK(r3.min_projection_ratio >= 1.0 - 1e-9);
  CHECK(r3.max_intersection_ratio <= 1.0 + 1e-9);
  CHECK(r3.intersection_below_bound > 0);
  CHECK(r3.worst_case_matrix.rows() == 6);
  CHECK(r3.failures.empty());

  three.translate = true;
  const auto moved = nonsqueeze_verify(three);
  CHECK(moved.min_projection_ratio == r3.min_projection_ratio);
  CHECK(moved.max_intersection_ratio == r3.max_intersection_ratio);
}

TEST_CASE("parallel batch equals serial reference") {
  NonsqueezeConfig c;
  c.n = 4;
  c.trials = 777;
  c.seed = 5;
  const auto a = nonsqueeze_verify(c);
  const auto b = nonsqueeze_verify_serial(c);
  CHECK(a.min_projection_ratio == b.min_projection_ratio);
  CHECK(a.max_intersection_ratio == b.max_intersection_ratio);
  CHECK(a.worst_trial == b.worst_trial);
  CHECK(a.worst_j == b.worst_j);
  CHECK(a.worst_case_matrix == b.worst_case_matrix);
  CHECK(a.intersection_equalities == b.intersection_equalities);
}

TEST_CASE("an absurd tolerance surfaces planar round-off as violations") {
  NonsqueezeConfig c;
  c.n = 1;
  c.trials = 500;
  c.tol = 1e-18;
  const auto r = nonsqueeze_verify(c);
  CHECK(r.violations > 0);
  CHECK(r.failures.size() <= 16);
  CHECK(r.failures.front().trial <= r.failures.back().trial);
}

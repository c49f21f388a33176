#include <doctest.h>

#include <cmath>
#include <random>

#include "symcap/errors.hpp"
#include "symcap/williamson.hpp"

using namespace symcap;

namespace {

Matrix random_pd(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int k = 0; k < 2 * n; ++k) a(i, k) = g(rng);
  return a * a.transpose() / (2.0 * n) + 0.3 * Matrix::Identity(2 * n, 2 * n);
}

// Period of exp(tJR) for n = 1: the first t > 0 where the flow returns to
// the identity, located by bisection on the rotation angle of a test vector.
double flow_period(const Matrix& r) {
  const QuadraticHamiltonian h(r);
  Vector z(2);
  z << 1.0, 0.0;
  auto angle = [&](double t) {
    const Vector w = quad_propagator(h, t).apply(z);
    return std::atan2(w(1), w(0));
  };
  // Accumulate winding in small steps until one full clockwise turn.
  double t = 0.0, total = 0.0, prev = angle(0.0);
  const double dt = 1e-3;
  while (true) {
    const double a = angle(t + dt);
    double d = a - prev;
    if (d > M_PI) d -= 2 * M_PI;
    if (d < -M_PI) d += 2 * M_PI;
    if (std::abs(total + d) >= 2 * M_PI) break;
    total += d;
    prev = a;
    t += dt;
  }
  double lo = t, hi = t + dt;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Vector w = quad_propagator(h, mid).apply(z);
    // Past the period the vector has crossed back above the x axis.
    double d = std::atan2(w(1), w(0)) - prev;
    if (d > M_PI) d -= 2 * M_PI;
    if (d < -M_PI) d += 2 * M_PI;
    if (std::abs(total + d) >= 2 * M_PI) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("spectrum of hand-checkable Hessians") {
  const auto id = symplectic_spectrum(Matrix::Identity(4, 4));
  CHECK(id.mu[0] == doctest::Approx(1.0));
  CHECK(id.mu[1] == doctest::Approx(1.0));
  for (auto [a, b] : {std::pair{4.0, 1.0}, {2.0, 8.0}, {0.3, 0.3}, {1e-2, 30.0}}) {
    Matrix r(2, 2);
    r << a, 0.0, 0.0, b;
    CHECK(symplectic_spectrum(r).mu[0] == doctest::Approx(std::sqrt(a * b)).epsilon(1e-12));
  }
  // Oscillator p^2/2m + m w^2 x^2/2.
  const double m = 3.0, w = 0.7;
  Matrix r(2, 2);
  r << m * w * w, 0.0, 0.0, 1.0 / m;
  const auto s = symplectic_spectrum(r);
  CHECK(s.mu[0] == doctest::Approx(w).epsilon(1e-12));
  CHECK(s.omega[0] == s.mu[0]);
}

TEST_CASE("oscillator frequency matches the flow period") {
  const double m = 3.0, w = 0.7;
  Matrix r(2, 2);
  r << m * w * w, 0.0, 0.0, 1.0 / m;
  CHECK(flow_period(r) == doctest::Approx(2 * M_PI / w).epsilon(1e-8));
  const Matrix r2 = random_pd(1, 12);
  CHECK(flow_period(r2) == doctest::Approx(2 * M_PI / symplectic_spectrum(r2).mu[0]).epsilon(1e-8));
}

TEST_CASE("williamson decomposition of diag(4, 1)") {
  Matrix r(2, 2);
  r << 4.0, 0.0, 0.0, 1.0;
  const auto wd = williamson_decompose(r);
  const Matrix d = wd.s.matrix().transpose() * r * wd.s.matrix();
  CHECK(d(0, 0) == doctest::Approx(2.0));
  CHECK(d(1, 1) == doctest::Approx(2.0));
  CHECK(std::abs(d(0, 1)) <= 1e-12);
  // The hand solution S = diag(1/sqrt 2, sqrt 2) is one valid choice.
  Matrix hand(2, 2);
  hand << 1.0 / std::sqrt(2.0), 0.0, 0.0, std::sqrt(2.0);
  const Matrix dh = hand.transpose() * r * hand;
  CHECK(dh(0, 0) == doctest::Approx(2.0));
  CHECK(dh(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("williamson residual contract on random Hessians") {
  for (int n = 1; n <= 10; ++n) {
    const Matrix r = random_pd(n, 11 + n);
    const auto wd = williamson_decompose(r);
    CHECK(is_symplectic(wd.s.matrix()).symplectic);
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) d(j, j) = d(n + j, n + j) = wd.spectrum.mu[j];
    const Matrix sts = wd.s.matrix().transpose() * r * wd.s.matrix();
    CHECK(inf_norm(sts - d) <= 1e-8 * inf_norm(r));
    CHECK(wd.residual <= 1e-8 * inf_norm(r));
    for (int j = 1; j < n; ++j) CHECK(wd.spectrum.mu[j - 1] <= wd.spectrum.mu[j]);
  }
}

TEST_CASE("repeated symplectic eigenvalues are accepted") {
  const auto wd = williamson_decompose(2.5 * Matrix::Identity(6, 6));
  for (double mu : wd.spectrum.mu) CHECK(mu == doctest::Approx(2.5));
  CHECK(wd.residual <= 1e-8 * 2.5);
}

TEST_CASE("spectrum scales linearly and is congruence invariant") {
  for (int n : {1, 3, 6}) {
    const Matrix r = random_pd(n, 100 + n);
    const auto base = symplectic_spectrum(r).mu;
    for (double lambda : {0.1, 3.0, 250.0}) {
      const auto scaled = symplectic_spectrum(lambda * r).mu;
      for (int j = 0; j < n; ++j) CHECK(scaled[j] == doctest::Approx(lambda * base[j]).epsilon(1e-10));
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Matrix s = random_symplectic(n, seed).matrix();
      Matrix moved = s.transpose() * r * s;
      moved = 0.5 * (moved + moved.transpose());
      const auto mu = symplectic_spectrum(moved).mu;
      for (int j = 0; j < n; ++j) CHECK(mu[j] == doctest::Approx(base[j]).epsilon(1e-8));
    }
  }
}

TEST_CASE("normal radii") {
  for (double r : normal_radii(Matrix::Identity(4, 4), 0.5)) CHECK(r == doctest::Approx(1.0));
  CHECK(normal_radii(2.0 * Matrix::Identity(2, 2), 1.0)[0] == doctest::Approx(1.0));
  // Oscillator ellipse at E: radius sqrt(2E / w).
  const double m = 2.0, w = 1.7, e = 0.9;
  Matrix r(2, 2);
  r << m * w * w, 0.0, 0.0, 1.0 / m;
  CHECK(normal_radii(r, e)[0] == doctest::Approx(std::sqrt(2 * e / w)));
  CHECK_THROWS_AS(normal_radii(r, 0.0), Error);
  CHECK_THROWS_AS(normal_radii(r, -1.0), Error);
  // Descending radii for ascending mu.
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 1.0, 4.0, 1.0, 4.0;
  const auto rad = normal_radii(d, 1.0);
  CHECK(rad[0] > rad[1]);
}

TEST_CASE("invalid Hessians are rejected") {
  Matrix r(2, 2);
  r << 1.0, 0.0, 0.0, -2.0;
  CHECK_THROWS_AS(symplectic_spectrum(r), Error);
  r << 1.0, 0.3, 0.0, 1.0;
  CHECK_THROWS_AS(symplectic_spectrum(r), Error);
  CHECK_THROWS_AS(symplectic_spectrum(Matrix::Identity(3, 3)), Error);
}

TEST_CASE("spectrum csv") {
  Matrix r(2, 2);
  r << 4.0, 0.0, 0.0, 1.0;
  const auto csv = spectrum_csv(symplectic_spectrum(r));
  CHECK(csv.rfind("j,mu,radius,omega\n", 0) == 0);
  const auto row = csv.substr(csv.find('\n') + 1);
  CHECK(row.rfind("1,", 0) == 0);
  CHECK(std::stod(row.substr(2)) == doctest::Approx(2.0));
}

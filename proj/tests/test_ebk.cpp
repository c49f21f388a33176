#include <doctest.h>

#include <cmath>

#include "oracles/area_oracle.hpp"
#include "oracles/flow_oracle.hpp"
#include "symcap/ebk.hpp"
#include "symcap/errors.hpp"

using namespace symcap;

namespace {

ActionHamiltonian product_k() {
  return ActionHamiltonian(
      2, [](std::span<const double> a) { return a[0] * a[1]; },
      [](std::span<const double> a) { return std::vector<double>{a[1], a[0]}; }, true, "product");
}

}  // namespace

TEST_CASE("quantized actions") {
  const std::vector<int> m1{2};
  const auto a = quantized_actions(m1, 0, 1.0);
  REQUIRE(a.size() == 1);
  CHECK(a[0][0] == 0.5);
  const std::vector<int> m2{2, 2};
  const auto b = quantized_actions(m2, 1, 1.0);
  REQUIRE(b.size() == 4);
  CHECK(b[2] == std::vector<double>{1.5, 0.5});  // N = (1, 0); last index fastest
  const std::vector<int> m3{3};
  CHECK(quantized_actions(m3, 0, 1.0)[0][0] == 0.75);
  CHECK(quantized_actions(m2, 2, 0.5)[8] == std::vector<double>{1.25, 1.25});
  const std::vector<int> bad{2, 0};
  try {
    quantized_actions(bad, 1, 1.0);
    FAIL("m = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMaslov);
  }
  const std::vector<int> neg{-2};
  CHECK_THROWS_AS(quantized_actions(neg, 1, 1.0), Error);
  CHECK_THROWS_AS(quantized_actions(m1, -1, 1.0), Error);
  CHECK_THROWS_AS(quantized_actions(m1, 1, 0.0), Error);
}

TEST_CASE("oscillator levels are exact") {
  const std::vector<double> omega{1.0, std::sqrt(2.0), 0.3};
  const auto k = ActionHamiltonian::oscillator(omega);
  const std::vector<int> m{2, 2, 2};
  for (double hbar : {1.0, 0.25}) {
    const auto spec = energy_levels(k, m, 4, hbar);
    CHECK(spec.entries.size() == 125);
    CHECK(spec.warnings.empty());
    for (const auto& e : spec.entries) {
      double ref = 0.0;
      for (int j = 0; j < 3; ++j) ref += (e.quanta[j] + 0.5) * hbar * omega[j];
      CHECK(e.energy == doctest::Approx(ref).epsilon(1e-15));
      for (int j = 0; j < 3; ++j) CHECK(e.radii[j] == doctest::Approx(std::sqrt(2 * e.actions[j])));
    }
    for (std::size_t i = 1; i < spec.entries.size(); ++i)
      CHECK(spec.entries[i - 1].energy <= spec.entries[i].energy);
    CHECK(ground_bound(k, hbar) == doctest::Approx(0.5 * hbar * (1.0 + std::sqrt(2.0) + 0.3)));
  }
}

TEST_CASE("two-oscillator example from the command line") {
  const auto k = ActionHamiltonian::oscillator({1.0, 2.0});
  const std::vector<int> m{2, 2};
  const auto spec = energy_levels(k, m, 1, 1.0);
  REQUIRE(spec.entries.size() == 4);
  const double expected[] = {1.5, 2.5, 3.5, 4.5};
  for (int i = 0; i < 4; ++i) CHECK(spec.entries[i].energy == doctest::Approx(expected[i]));
}

TEST_CASE("simple action Hamiltonians") {
  const auto sq = ActionHamiltonian::power(1, 2.0);
  const std::vector<int> m{2};
  const auto spec = energy_levels(sq, m, 6, 1.0);
  for (const auto& e : spec.entries) CHECK(e.energy == doctest::Approx(std::pow(e.quanta[0] + 0.5, 2)));
  CHECK(ground_bound(product_k(), 1.0) == doctest::Approx(0.25));
  CHECK(ground_bound(ActionHamiltonian::power(1, 0.5), 2.0) == doctest::Approx(1.0));
}

TEST_CASE("table K matches direct evaluation at the quantized actions") {
  // A pendulum-like softening spectrum sampled at a few actions.
  std::vector<double> is, es;
  for (int k = 0; k <= 20; ++k) {
    const double i = 0.25 * k;
    is.push_back(i);
    es.push_back(i - 0.05 * i * i);
  }
  const auto k = ActionHamiltonian::table(is, es);
  CHECK(k.monotone());
  const std::vector<int> m{2};
  const auto spec = energy_levels(k, m, 4, 1.0);
  for (const auto& e : spec.entries) {
    // I = N + 1/2 falls between table nodes; interpolate by hand.
    const double i = e.quanta[0] + 0.5;
    const int lo = static_cast<int>(i / 0.25);
    const double t = (i - is[lo]) / 0.25;
    CHECK(e.energy == doctest::Approx(es[lo] + t * (es[lo + 1] - es[lo])));
  }
  const std::vector<double> probe{6.0};
  try {
    k(probe);
    FAIL("evaluation outside the table accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Evaluation);
    CHECK(std::string(e.what()).find("(6)") != std::string::npos);
  }
  CHECK_THROWS_AS(energy_levels(k, m, 6, 1.0), Error);
  CHECK_THROWS_AS(ActionHamiltonian::table({1.0}, {1.0}), Error);
  CHECK_THROWS_AS(ActionHamiltonian::table({1.0, 1.0}, {1.0, 2.0}), Error);
  CHECK_FALSE(ActionHamiltonian::table({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}).monotone());
}

TEST_CASE("evaluation failures name the action tuple") {
  const ActionHamiltonian broken(
      2, [](std::span<const double> a) { return a[0] > 1.0 ? NAN : a[0] + a[1]; }, {}, true);
  const std::vector<int> m{2, 2};
  try {
    energy_levels(broken, m, 2, 1.0);
    FAIL("NaN energy accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Evaluation);
    CHECK(std::string(e.what()).find("(1.5, 0.5)") != std::string::npos);
  }
  const std::vector<int> wrong{2};
  CHECK_THROWS_AS(energy_levels(broken, wrong, 2, 1.0), Error);
}

TEST_CASE("odd Maslov indices produce warnings") {
  const auto k = ActionHamiltonian::oscillator({1.0});
  const std::vector<int> m{3};
  const auto spec = energy_levels(k, m, 2, 1.0);
  CHECK(spec.warnings.size() == 1);
  CHECK(spec.entries[0].actions[0] == 0.75);
}

TEST_CASE("parallel grid equals the serial reference") {
  const auto k = ActionHamiltonian::power(3, 1.5);
  const std::vector<int> m{2, 4, 2};
  const auto a = energy_levels(k, m, 7, 0.7);
  const auto b = energy_levels_serial(k, m, 7, 0.7);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].quanta == b.entries[i].quanta);
    CHECK(a.entries[i].energy == b.entries[i].energy);
  }
}

TEST_CASE("torus radii and capacity condition") {
  CHECK(torus_radii_from_actions(std::vector<double>{0.5})[0] == doctest::Approx(1.0));
  CHECK(torus_radii_from_actions(std::vector<double>{2.0})[0] == doctest::Approx(2.0));
  CHECK(torus_radii_from_actions(std::vector<double>{0.5, 2.0}) == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(torus_radii_from_actions(std::vector<double>{0.0}), Error);

  const auto k = ActionHamiltonian::oscillator({1.0, 1.0});
  const std::vector<int> m{2, 2};
  const auto spec = energy_levels(k, m, 3, 1.0);
  const auto& ground = spec.entries.front();
  const auto c = capacity_condition(ground, 1.0);
  CHECK(c.capacity == doctest::Approx(M_PI));
  CHECK(c.bound == doctest::Approx(M_PI));
  CHECK(c.satisfied);
  for (const auto& e : spec.entries) {
    if (e.quanta == std::vector<int>{3, 0}) {
      CHECK(capacity_condition(e, 1.0).capacity == doctest::Approx(M_PI));
      CHECK(capacity_condition(e, 1.0).satisfied);
    }
    CHECK(capacity_condition(e, 1.0).satisfied);
  }
  EBKEntry fake;
  fake.radii = {0.5, 1.0};
  const auto bad = capacity_condition(fake, 1.0);
  CHECK(bad.capacity == doctest::Approx(M_PI / 4));
  CHECK_FALSE(bad.satisfied);
  CHECK_THROWS_AS(capacity_condition(EBKEntry{}, 1.0), Error);
}

TEST_CASE("energy bound") {
  const auto k = ActionHamiltonian::oscillator({1.0, 3.0});
  const std::vector<int> m{2, 2};
  const auto spec = energy_levels(k, m, 5, 1.0);
  const auto rep = verify_energy_bound(k, spec);
  CHECK(rep.passed);
  CHECK(rep.ground == doctest::Approx(2.0));
  CHECK(rep.min_margin == doctest::Approx(0.0));
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& q = spec.entries[i].quanta;
    CHECK(rep.margins[i] == doctest::Approx(q[0] * 1.0 + q[1] * 3.0));
  }

  const auto sq = ActionHamiltonian::power(1, 2.0);
  const std::vector<int> one{2};
  const auto r2 = verify_energy_bound(sq, energy_levels(sq, one, 5, 1.0));
  for (int n = 0; n <= 5; ++n) CHECK(r2.margins[n] == doctest::Approx(std::pow(n + 0.5, 2) - 0.25));

  const auto dec = ActionHamiltonian::power(1, -1.0);
  try {
    verify_energy_bound(dec, energy_levels(dec, one, 2, 1.0));
    FAIL("decreasing K accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TheoremHypothesis);
  }

  // Larger Maslov indices push the lowest level strictly above the bound.
  const std::vector<int> m4{4, 2};
  const auto lifted = verify_energy_bound(k, energy_levels(k, m4, 2, 1.0));
  CHECK(lifted.min_margin > 0.1);
}

TEST_CASE("projection area bound") {
  const std::vector<int> m{2, 2};
  const auto k = ActionHamiltonian::oscillator({1.0, 1.0});
  for (const auto& e : energy_levels(k, m, 2, 1.0).entries) {
    const auto areas = projection_area_bound(e, 1.0);
    REQUIRE(areas.size() == 2);
    if (e.quanta == std::vector<int>{2, 0}) {
      CHECK(areas[0].area == doctest::Approx(5 * M_PI));
      CHECK(areas[1].area == doctest::Approx(M_PI));
    }
    for (const auto& a : areas) CHECK(a.satisfied);
  }
  EBKEntry ground;
  ground.radii = {1.0, 1.0};
  for (const auto& a : projection_area_bound(ground, 1.0)) CHECK(a.area == doctest::Approx(a.bound));
  EBKEntry squeezed;
  squeezed.radii = {0.9, 1.0};
  const auto r = projection_area_bound(squeezed, 1.0);
  CHECK_FALSE(r[0].satisfied);
  CHECK(r[1].satisfied);
}

TEST_CASE("hbar scaling") {
  const auto k = ActionHamiltonian::oscillator({1.0, 2.5});
  const std::vector<int> m{2, 4};
  const auto a = quantized_actions(m, 3, 1.0);
  const auto b = quantized_actions(m, 3, 0.3);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < 2; ++j) CHECK(b[i][j] == doctest::Approx(0.3 * a[i][j]));
  CHECK(ground_bound(k, 0.3) == doctest::Approx(0.3 * ground_bound(k, 1.0)));
}

TEST_CASE("audit of action Hamiltonians") {
  const auto ok = audit(ActionHamiltonian::power(2, 1.5), 1);
  CHECK(ok.ok);
  CHECK(ok.points == 1000);
  CHECK(ok.max_gradient_mismatch < 1e-6);
  const ActionHamiltonian lying(
      1, [](std::span<const double> a) { return -a[0]; }, {}, true);
  const auto bad = audit(lying, 1, 100);
  CHECK_FALSE(bad.ok);
  CHECK(bad.nonpositive_gradient == 100);
  const ActionHamiltonian wrong_grad(
      1, [](std::span<const double> a) { return a[0] * a[0]; },
      [](std::span<const double> a) { return std::vector<double>{a[0]}; }, true);
  CHECK_FALSE(audit(wrong_grad, 1, 100).ok);
  // Degenerate K = I1 + I2 has a vanishing Hessian.
  CHECK(action_hessian_scale(ActionHamiltonian::oscillator({1.0, 1.0}), std::vector<double>{1.0, 2.0}) < 1e-6);
  CHECK(action_hessian_scale(ActionHamiltonian::power(1, 2.0), std::vector<double>{1.0}) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("one-dimensional action quadrature") {
  for (double omega : {0.5, 1.0, 3.0}) {
    const Hamiltonian1D h{[omega](double x, double p) { return 0.5 * (p * p + omega * omega * x * x); }, 0.0};
    for (double e : {0.1, 1.0, 7.0}) CHECK(action_quadrature_1d(h, e) == doctest::Approx(e / omega).epsilon(1e-8));
  }
  for (double lambda : {0.01, 0.1, 1.0}) {
    auto f = [lambda](double x, double p) { return 0.5 * p * p + 0.5 * x * x + lambda * std::pow(x, 4); };
    const double e = 1.0;
    const double ref = oracle::polar_area(f, e, 4096) / (2 * M_PI);
    const double poly = oracle::polygon_level_area(f, e, 20000) / (2 * M_PI);
    CHECK(ref == doctest::Approx(poly).epsilon(1e-6));
    const double got = action_quadrature_1d(Hamiltonian1D{f, 0.0}, e);
    CHECK(got == doctest::Approx(ref).epsilon(1e-8));
    CHECK(got < e);
  }
}

TEST_CASE("action equals area over 2 pi along a simulated orbit") {
  // Cubic-anharmonic well: the ODE oracle traces one orbit and the shoelace
  // formula gives its area.
  const double e = 0.05;
  auto f = [](double x, double p) { return 0.5 * p * p + 0.5 * x * x - x * x * x / 3.0; };
  auto grad = [](const Vector& z) {
    Vector g(2);
    g << z(0) - z(0) * z(0), z(1);
    return g;
  };
  Vector z0(2);
  z0 << 0.0, std::sqrt(2 * e);
  std::vector<Vector> orbit{z0};
  Vector z = z0;
  const double dt = 0.005;
  double area = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const Vector next = oracle::integrate_hamiltonian(grad, z, dt, 1e-13);
    area += 0.5 * (z(0) * next(1) - next(0) * z(1));
    if (k > 10 && z(0) < 0.0 && next(0) >= 0.0) break;
    z = next;
  }
  const double got = action_quadrature_1d(Hamiltonian1D{f, 0.0}, e);
  CHECK(got == doctest::Approx(std::abs(area) / (2 * M_PI)).epsilon(1e-4));
}

TEST_CASE("level sets that are empty or open") {
  const Hamiltonian1D well{[](double x, double p) { return 0.5 * p * p + 0.5 * x * x + 1.0; }, 0.0};
  try {
    action_quadrature_1d(well, 0.5);
    FAIL("empty level set accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyLevelSet);
  }
  const Hamiltonian1D cubic{[](double x, double p) { return 0.5 * p * p + 0.5 * x * x - x * x * x / 3.0; }, 0.0};
  try {
    action_quadrature_1d(cubic, 0.5);  // above the barrier at x = 1 (V = 1/6)
    FAIL("open orbit accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCompactOrbit);
  }
  const Hamiltonian1D free{[](double, double p) { return 0.5 * p * p; }, 0.0};
  CHECK_THROWS_AS(action_quadrature_1d(free, 1.0), Error);
}

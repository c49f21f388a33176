#include "symcap/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "symcap/ebk.hpp"
#include "symcap/errors.hpp"
#include "symcap/maslov.hpp"
#include "symcap/montecarlo.hpp"
#include "symcap/regions.hpp"
#include "symcap/squeeze.hpp"
#include "symcap/williamson.hpp"

namespace symcap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Matrix random_positive_definite(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) g(r, c) = gauss(rng);
  Matrix m = g * g.transpose() / (2.0 * n) + 0.2 * Matrix::Identity(2 * n, 2 * n);
  return 0.5 * (m + m.transpose());
}

Matrix shear_example() {
  Matrix s = Matrix::Identity(4, 4);
  s(2, 1) = 1.0;
  s(3, 0) = 1.0;
  return s;
}

// 1. Oscillator levels reproduce sum_j (N_j + 1/2) hbar omega_j.
CriterionResult oscillator_levels(const RunConfig& cfg) {
  CriterionResult res{1, "oscillator levels", true, ""};
  std::mt19937_64 rng(derive_seed(cfg.seed, 1));
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  double worst = 0.0;
  long entries = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<double> omega(n);
    for (auto& w : omega) w = freq(rng);
    const auto k = ActionHamiltonian::oscillator(omega);
    const std::vector<int> maslov(n, 2);
    const auto spec = energy_levels(k, maslov, 5, cfg.hbar);
    const long expected = static_cast<long>(std::pow(6, n));
    if (static_cast<long>(spec.entries.size()) != expected) res.passed = false;
    for (const auto& e : spec.entries) {
      double ref = 0.0;
      for (int j = 0; j < n; ++j) ref += (e.quanta[j] + 0.5) * cfg.hbar * omega[j];
      const double err = std::abs(e.energy - ref) / (kEps * std::abs(ref));
      worst = std::max(worst, err);
      ++entries;
    }
    double ground = 0.0;
    for (double w : omega) ground += 0.5 * cfg.hbar * w;
    const double lowest = spec.entries.front().energy;
    if (std::abs(lowest - ground) > 4.0 * kEps * ground) res.passed = false;
    if (std::abs(ground_bound(k, cfg.hbar) - ground) > 4.0 * kEps * ground) res.passed = false;
  }
  if (worst > 4.0) res.passed = false;
  res.detail = std::to_string(entries) + " levels, max error " + sci(worst) + " ulp; ground = sum hbar omega / 2";
  return res;
}

// 2. The minimal ellipse of the oscillator with m = omega = 1 at E = hbar / 2.
CriterionResult intro_ellipse(const RunConfig& cfg) {
  CriterionResult res{2, "intro ellipse", true, ""};
  const double m = 1.0, omega = 1.0;
  Matrix r(2, 2);
  r << m * omega * omega, 0.0, 0.0, 1.0 / m;
  const double energy = 0.5 * cfg.hbar * omega;
  const double radius = normal_radii(r, energy)[0];
  const double area = capacity(make_ellipsoid(PhasePoint::origin(1), r, energy)).value;
  const std::vector<int> maslov{2};
  const auto actions = quantized_actions(maslov, 0, cfg.hbar);
  const double torus_r = torus_radii_from_actions(actions.front())[0];
  const double half_h = 0.5 * planck(cfg.hbar);
  const double scale = std::max(1.0, half_h);
  const double area_err = std::abs(area - half_h);
  const double r_err = std::max(std::abs(radius - std::sqrt(cfg.hbar)), std::abs(torus_r - std::sqrt(cfg.hbar)));
  res.passed = area_err <= 1e-12 * scale && r_err <= 1e-12 * std::max(1.0, std::sqrt(cfg.hbar));
  res.detail = "radius error " + sci(r_err) + ", |area - h/2| = " + sci(area_err);
  return res;
}

// 3. Normalization on balls and cylinders, solid torus at radius sqrt(hbar).
CriterionResult normalization(const RunConfig& cfg) {
  CriterionResult res{3, "capacity normalization", true, ""};
  long checks = 0;
  double torus_err = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (double radius : {0.25, 1.0, std::sqrt(2.0), 3.5}) {
      const double expected = kPi * radius * radius;
      const auto ball = capacity(make_ball(PhasePoint::origin(n), radius));
      if (ball.value != expected || !ball.exact) res.passed = false;
      for (int j = 1; j <= n; ++j) {
        const auto cyl = capacity(make_cylinder(j, PhasePoint::origin(n), radius));
        if (cyl.value != expected || !cyl.exact) res.passed = false;
        ++checks;
      }
      ++checks;
    }
    const auto torus = capacity(make_solid_torus(std::vector<double>(n, std::sqrt(cfg.hbar))));
    torus_err = std::max(torus_err, std::abs(torus.value - 0.5 * planck(cfg.hbar)));
    if (!torus.exact) res.passed = false;
  }
  if (torus_err > 1e-12 * std::max(1.0, 0.5 * planck(cfg.hbar))) res.passed = false;
  res.detail = std::to_string(checks) + " ball/cylinder values exact; solid torus |c - h/2| <= " + sci(torus_err);
  return res;
}

// 4. Conformality, monotonicity and symplectic invariance.
CriterionResult axioms(const RunConfig& cfg) {
  CriterionResult res{4, "capacity axioms", true, ""};
  std::mt19937_64 rng(derive_seed(cfg.seed, 4));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<PhaseRegion> shapes;
  shapes.push_back(make_ball(PhasePoint::origin(2), 1.3));
  shapes.push_back(make_ellipsoid(PhasePoint::origin(2), random_positive_definite(2, rng), 1.0));
  shapes.push_back(make_solid_torus({0.7, 1.9}));
  shapes.push_back(make_cylinder(2, PhasePoint::origin(2), 0.8));

  double conf_err = 0.0;
  for (const auto& shape : shapes)
    for (double lambda : {0.5, 2.0, 7.0}) {
      const double c = capacity(shape).value;
      const double scaled = capacity(scale_region(shape, lambda)).value;
      conf_err = std::max(conf_err, rel_diff(scaled, lambda * lambda * c));
    }
  if (conf_err > 1e-12) res.passed = false;

  long mono_bad = 0;
  for (int pair = 0; pair < 500; ++pair) {
    const int n = 1 + pair % 3;
    const Matrix outer = random_positive_definite(n, rng);
    Matrix b = random_positive_definite(n, rng) * unit(rng);
    const Matrix inner = outer + 0.5 * (b + b.transpose());
    const auto in = make_ellipsoid(PhasePoint::origin(n), inner, 1.0);
    const auto out = make_ellipsoid(PhasePoint::origin(n), outer, 1.0);
    const auto incl = inclusion_check(in, out, derive_seed(cfg.seed, 1000 + pair));
    if (!incl.included || capacity(in).value > capacity(out).value * (1.0 + cfg.tol)) ++mono_bad;
  }
  if (mono_bad) res.passed = false;

  double inv_err = 0.0;
  long not_symplectic = 0;
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    const double c = capacity(shapes[k]).value;
    for (int t = 0; t < 100; ++t) {
      const auto s = random_symplectic(2, derive_seed(cfg.seed, 10000 + 100 * k + t));
      if (!is_symplectic(s.matrix(), cfg.tol).symplectic) ++not_symplectic;
      Vector shift(4);
      for (int i = 0; i < 4; ++i) shift(i) = unit(rng) - 0.5;
      const auto image = map_region(shapes[k], s, PhasePoint(shift));
      inv_err = std::max(inv_err, rel_diff(capacity(image).value, c));
      // Ball and ellipsoid images are ellipsoids again; their capacity from
      // the transformed Hessian is an independent route.
      const Matrix sinv = s.inverse().matrix();
      if (const auto* e = std::get_if<Ellipsoid>(&shapes[k].shape)) {
        const Matrix m = sinv.transpose() * e->hessian * sinv;
        inv_err = std::max(inv_err, rel_diff(capacity(make_ellipsoid(PhasePoint::origin(2), m, e->level)).value, c));
      } else if (const auto* b = std::get_if<Ball>(&shapes[k].shape)) {
        const Matrix m = (2.0 / (b->radius * b->radius)) * sinv.transpose() * sinv;
        inv_err = std::max(inv_err, rel_diff(capacity(make_ellipsoid(PhasePoint::origin(2), m, 1.0)).value, c));
      }
    }
  }
  if (inv_err > cfg.tol || not_symplectic) res.passed = false;
  res.detail = "conformality err " + sci(conf_err) + ", monotonicity failures " + std::to_string(mono_bad) +
               "/500, invariance err " + sci(inv_err) + " (" + std::to_string(not_symplectic) +
               " maps rejected at tol)";
  return res;
}

// 5. Linear non-squeezing over random symplectic matrices.
CriterionResult nonsqueezing(const RunConfig& cfg) {
  CriterionResult res{5, "linear non-squeezing", true, ""};
  std::ostringstream os;
  for (int n : {1, 2, 3, 5}) {
    NonsqueezeConfig nc;
    nc.n = n;
    nc.trials = 10000;
    nc.seed = derive_seed(cfg.seed, 50 + n);
    nc.tol = cfg.tol;
    const auto rep = nonsqueeze_verify(nc);
    if (rep.violations) res.passed = false;
    os << "n=" << n << ": violations " << rep.violations << ", min ratio " << sci(rep.min_projection_ratio)
       << "; ";
  }
  res.detail = os.str();
  res.detail.resize(res.detail.size() - 2);
  return res;
}

// 6. Closed-form shadows against the sampling oracles.
CriterionResult shadow_oracles(const RunConfig& cfg) {
  CriterionResult res{6, "shadow oracle agreement", true, ""};
  double worst = 0.0;
  auto compare = [&](const Matrix& s, int j, std::uint64_t stream) {
    const auto sm = SymplecticMatrix::from(s);
    const double proj = projection_area(sm, 1.0, j);
    const double inter = intersection_area(sm, 1.0, j);
    const auto mp = mc_projection_area(s, 1.0, j, cfg.samples, derive_seed(cfg.seed, stream));
    const auto mi = mc_intersection_area(s, 1.0, j, cfg.samples, derive_seed(cfg.seed, stream + 1));
    const double e = std::max(rel_diff(mp.area, proj), rel_diff(mi.area, inter));
    worst = std::max(worst, e);
    return e;
  };
  const Matrix shear = shear_example();
  const auto sm = SymplecticMatrix::from(shear);
  const bool shear_closed = std::abs(projection_area(sm, 1.0, 1) - std::sqrt(2.0) * kPi) <= 1e-12 &&
                            std::abs(intersection_area(sm, 1.0, 1) - kPi / std::sqrt(2.0)) <= 1e-12;
  if (!shear_closed) res.passed = false;
  const double shear_err = compare(shear, 1, 600);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_symplectic(2, derive_seed(cfg.seed, 700 + t));
    for (int j = 1; j <= 2; ++j) compare(s.matrix(), j, 800 + 4 * t + 2 * j);
  }
  if (worst > 0.01) res.passed = false;
  res.detail = "shear closed form " + std::string(shear_closed ? "exact" : "WRONG") + ", shear MC err " +
               sci(shear_err) + ", worst relative MC err " + sci(worst) + " over 41 plane pairs";
  return res;
}

// 7. Williamson normal form.
CriterionResult williamson_check(const RunConfig& cfg) {
  CriterionResult res{7, "williamson normal form", true, ""};
  std::mt19937_64 rng(derive_seed(cfg.seed, 7));
  double worst_res = 0.0, worst_cong = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 10;
    const Matrix r = random_positive_definite(n, rng);
    const auto wd = williamson_decompose(r);
    const Matrix d = wd.s.matrix().transpose() * r * wd.s.matrix();
    Matrix diag = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) diag(j, j) = diag(n + j, n + j) = wd.spectrum.mu[j];
    worst_res = std::max(worst_res, inf_norm(d - diag) / inf_norm(r));
    const auto s = random_symplectic(n, derive_seed(cfg.seed, 7000 + t));
    const Matrix moved = s.matrix().transpose() * r * s.matrix();
    const auto mu2 = symplectic_spectrum(0.5 * (moved + moved.transpose())).mu;
    for (int j = 0; j < n; ++j) worst_cong = std::max(worst_cong, rel_diff(mu2[j], wd.spectrum.mu[j]));
  }
  double worst_diag = 0.0;
  for (auto [a, b] : {std::pair{4.0, 1.0}, {2.0, 8.0}, {0.3, 7.0}, {1e-3, 5e2}, {9.0, 9.0}}) {
    Matrix r(2, 2);
    r << a, 0.0, 0.0, b;
    worst_diag = std::max(worst_diag, rel_diff(symplectic_spectrum(r).mu[0], std::sqrt(a * b)));
  }
  res.passed = worst_res <= 1e-8 && worst_cong <= 1e-8 && worst_diag <= 1e-10;
  res.detail = "residual/||R|| " + sci(worst_res) + ", congruence " + sci(worst_cong) + ", diag(a,b) " +
               sci(worst_diag);
  return res;
}

// 8. Maslov indices of circle and torus cycles.
CriterionResult maslov_check(const RunConfig& cfg) {
  CriterionResult res{8, "maslov indices", true, ""};
  std::mt19937_64 rng(derive_seed(cfg.seed, 8));
  std::uniform_real_distribution<double> rad(0.3, 3.0);
  const int circle = maslov_index(torus_cycle_loop({1.0}, 1, 64)).index;
  if (circle != 2) res.passed = false;
  long cycles = 0, bad_cycles = 0, bad_transport = 0, bad_doubling = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<double> radii(n);
    for (auto& r : radii) r = rad(rng);
    for (int j = 1; j <= n; ++j) {
      const int m = maslov_index(torus_cycle_loop(radii, j, 48)).index;
      const int m2 = maslov_index(torus_cycle_loop(radii, j, 96)).index;
      ++cycles;
      if (m != 2 || m % 2 != 0) ++bad_cycles;
      if (m2 != m) ++bad_doubling;
    }
  }
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 4;
    const int j = 1 + (t / 4) % n;
    std::vector<double> radii(n);
    for (auto& r : radii) r = rad(rng);
    const auto loop = torus_cycle_loop(radii, j, 48);
    const auto s = random_symplectic(n, derive_seed(cfg.seed, 8000 + t));
    if (maslov_index(transport_loop(loop, s)).index != maslov_index(loop).index) ++bad_transport;
  }
  res.passed = res.passed && bad_cycles == 0 && bad_transport == 0 && bad_doubling == 0;
  res.detail = "circle " + std::to_string(circle) + ", " + std::to_string(cycles - bad_cycles) + "/" +
               std::to_string(cycles) + " cycles with index 2, transport mismatches " +
               std::to_string(bad_transport) + "/50, doubling changes " + std::to_string(bad_doubling);
  return res;
}

// 9. Capacity condition, ground-energy bound and plane areas over a grid.
CriterionResult theorem_chain(const RunConfig& cfg) {
  CriterionResult res{9, "quantized torus chain", true, ""};
  std::mt19937_64 rng(derive_seed(cfg.seed, 9));
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  std::uniform_int_distribution<int> half_m(1, 3);

  std::vector<double> omega(3);
  for (auto& w : omega) w = freq(rng);
  const auto mixed = ActionHamiltonian(
      3,
      [omega](std::span<const double> a) {
        double lin = 0.0, sum = 0.0;
        for (int j = 0; j < 3; ++j) lin += omega[j] * a[j], sum += a[j];
        return lin + 0.1 * sum * sum;
      },
      [omega](std::span<const double> a) {
        const double sum = a[0] + a[1] + a[2];
        return std::vector<double>{omega[0] + 0.2 * sum, omega[1] + 0.2 * sum, omega[2] + 0.2 * sum};
      },
      true, "mixed");
  const std::vector<ActionHamiltonian> ks{ActionHamiltonian::oscillator(omega), ActionHamiltonian::power(3, 2.0),
                                          mixed};
  long entries = 0, cap_bad = 0, energy_bad = 0, area_bad = 0, ground_bad = 0, audit_bad = 0;
  for (std::size_t k = 0; k < ks.size(); ++k) {
    if (!audit(ks[k], derive_seed(cfg.seed, 900 + k)).ok) ++audit_bad;
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<int> maslov(3, 2);
      if (variant == 1)
        for (auto& m : maslov) m = 2 * half_m(rng);
      const auto spec = energy_levels(ks[k], maslov, 9, cfg.hbar);
      for (const auto& e : spec.entries) {
        ++entries;
        if (!capacity_condition(e, cfg.hbar).satisfied) ++cap_bad;
        for (const auto& pa : projection_area_bound(e, cfg.hbar))
          if (!pa.satisfied) ++area_bad;
      }
      const auto bound = verify_energy_bound(ks[k], spec);
      energy_bad += bound.violations;
      // The lowest level sits at N = 0 and touches the bound iff all m_j = 2.
      const auto& lowest = spec.entries.front();
      const bool at_zero = std::all_of(lowest.quanta.begin(), lowest.quanta.end(), [](int q) { return q == 0; });
      const bool all_two = std::all_of(maslov.begin(), maslov.end(), [](int m) { return m == 2; });
      const bool touches = std::abs(lowest.energy - bound.ground) <= 1e-12 * std::max(1.0, std::abs(bound.ground));
      if (!at_zero || touches != all_two) ++ground_bad;
    }
  }
  res.passed = cap_bad == 0 && energy_bad == 0 && area_bad == 0 && ground_bad == 0 && audit_bad == 0;
  res.detail = std::to_string(entries) + " entries: capacity violations " + std::to_string(cap_bad) +
               ", energy violations " + std::to_string(energy_bad) + ", plane-area violations " +
               std::to_string(area_bad) + ", ground-level anomalies " + std::to_string(ground_bad) +
               ", audit failures " + std::to_string(audit_bad);
  return res;
}

// Reference action for a level curve star-shaped about the origin: half the
// integral of r(theta)^2, trapezoid rule on a periodic integrand.
double polar_action(const std::function<double(double, double)>& h, double energy, int points) {
  double sum = 0.0;
  for (int k = 0; k < points; ++k) {
    const double th = 2.0 * kPi * k / points;
    const double c = std::cos(th), s = std::sin(th);
    double lo = 0.0, hi = 1.0;
    while (h(hi * c, hi * s) < energy) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(mid * c, mid * s) < energy ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    sum += r * r;
  }
  const double area = 0.5 * sum * (2.0 * kPi / points);
  return area / (2.0 * kPi);
}

// 10. One-dimensional action quadrature.
CriterionResult quadrature(const RunConfig&) {
  CriterionResult res{10, "1d action quadrature", true, ""};
  double worst_harm = 0.0;
  for (double omega : {0.5, 1.0, 3.0}) {
    for (double energy : {0.2, 1.0, 4.5}) {
      Hamiltonian1D ham{[omega](double x, double p) { return 0.5 * (p * p + omega * omega * x * x); }, 0.0};
      worst_harm = std::max(worst_harm, rel_diff(action_quadrature_1d(ham, energy), energy / omega));
    }
  }
  double worst_quartic = 0.0, oracle_spread = 0.0;
  for (double lambda : {0.01, 0.05, 0.2}) {
    auto h = [lambda](double x, double p) { return 0.5 * p * p + 0.5 * x * x + lambda * x * x * x * x; };
    const double energy = 1.0;
    const double ref = polar_action(h, energy, 4096);
    oracle_spread = std::max(oracle_spread, rel_diff(polar_action(h, energy, 2048), ref));
    const double got = action_quadrature_1d(Hamiltonian1D{h, 0.0}, energy);
    worst_quartic = std::max(worst_quartic, rel_diff(got, ref));
    if (!(got < energy)) res.passed = false;
  }
  res.passed = res.passed && worst_harm <= 1e-8 && worst_quartic <= 1e-6;
  res.detail = "harmonic rel err " + sci(worst_harm) + ", quartic rel err " + sci(worst_quartic) +
               " (reference self-consistency " + sci(oracle_spread) + ")";
  return res;
}

std::string determinism_probe(const RunConfig& cfg, bool serial) {
  Json out;
  NonsqueezeConfig nc;
  nc.n = 3;
  nc.trials = 500;
  nc.seed = derive_seed(cfg.seed, 110);
  nc.tol = cfg.tol;
  nc.translate = true;
  out["squeeze"] = nonsqueeze_to_json(serial ? nonsqueeze_verify_serial(nc) : nonsqueeze_verify(nc));
  const auto s = random_symplectic(2, derive_seed(cfg.seed, 111));
  const auto mp = serial ? mc_projection_area_serial(s.matrix(), 1.0, 1, 20000, derive_seed(cfg.seed, 112))
                         : mc_projection_area(s.matrix(), 1.0, 1, 20000, derive_seed(cfg.seed, 112));
  const auto mi = serial ? mc_intersection_area_serial(s.matrix(), 1.0, 2, 20000, derive_seed(cfg.seed, 113))
                         : mc_intersection_area(s.matrix(), 1.0, 2, 20000, derive_seed(cfg.seed, 113));
  out["mc"] = {mp.area, mp.std_error, mi.area, mi.std_error};
  const auto k = ActionHamiltonian::oscillator({1.0, std::sqrt(2.0), 0.7});
  const std::vector<int> maslov{2, 2, 4};
  out["ebk"] = ebk_to_json(serial ? energy_levels_serial(k, maslov, 4, cfg.hbar)
                                  : energy_levels(k, maslov, 4, cfg.hbar));
  const auto loop = transport_loop(torus_cycle_loop({1.0, 2.0}, 2, 32), random_symplectic(2, derive_seed(cfg.seed, 114)));
  out["maslov"] = maslov_to_json(maslov_index(loop));
  return out.dump();
}

// 11. Identical seeds give identical reports; parallel kernels match serial.
CriterionResult determinism(const RunConfig& cfg) {
  CriterionResult res{11, "determinism", true, ""};
  const auto a = determinism_probe(cfg, false);
  const auto b = determinism_probe(cfg, false);
  const auto c = determinism_probe(cfg, true);
  res.passed = a == b && a == c;
  res.detail = std::string("repeat ") + (a == b ? "identical" : "DIFFERS") + ", serial reference " +
               (a == c ? "identical" : "DIFFERS") + " (" + std::to_string(a.size()) + " bytes)";
  return res;
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.hbar > 0.0) || !std::isfinite(config.hbar)) fail(ErrorCode::Input, "hbar must be positive");
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) fail(ErrorCode::Input, "tol must be positive");
  if (config.samples < 64) fail(ErrorCode::Input, "samples must be at least 64");
  if (config.format != "json" && config.format != "csv") fail(ErrorCode::Input, "format must be json or csv");
}

bool AcceptanceReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

Json AcceptanceReport::to_json(const RunConfig& config) const {
  Json list = Json::array();
  for (const auto& c : criteria)
    list.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"config", {{"hbar", config.hbar}, {"tol", config.tol}, {"seed", config.seed}, {"samples", config.samples}}},
          {"criteria", std::move(list)},
          {"passed", passed()}};
}

std::string AcceptanceReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : criteria)
    os << (c.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": " << c.detail << '\n';
  return os.str();
}

AcceptanceReport run_acceptance(const RunConfig& config, int only) {
  validate(config);
  using Fn = CriterionResult (*)(const RunConfig&);
  const std::vector<std::pair<const char*, Fn>> all{
      {"oscillator levels", oscillator_levels}, {"intro ellipse", intro_ellipse},
      {"capacity normalization", normalization}, {"capacity axioms", axioms},
      {"linear non-squeezing", nonsqueezing},    {"shadow oracle agreement", shadow_oracles},
      {"williamson normal form", williamson_check}, {"maslov indices", maslov_check},
      {"quantized torus chain", theorem_chain},  {"1d action quadrature", quadrature},
      {"determinism", determinism}};
  AcceptanceReport rep;
  for (int id = 1; id <= static_cast<int>(all.size()); ++id) {
    if (only != 0 && only != id) continue;
    try {
      rep.criteria.push_back(all[id - 1].second(config));
    } catch (const std::exception& ex) {
      rep.criteria.push_back({id, all[id - 1].first, false, std::string("error: ") + ex.what()});
    }
  }
  return rep;
}

}  // namespace symcap

#include "symcap/ebk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "symcap/errors.hpp"
#include "symcap/regions.hpp"
#include "symcap/symcore.hpp"

namespace symcap {

namespace {

std::string tuple_text(std::span<const double> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

double fd_step(double a) {
  double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(std::abs(a), 1.0);
  if (a > 0.0) h = std::min(h, 0.5 * a);
  return h;
}

void check_quantization_args(std::span<const int> maslov, int n_max, double hbar) {
  if (maslov.empty()) fail(ErrorCode::Dimension, "at least one Maslov index is required");
  for (std::size_t j = 0; j < maslov.size(); ++j) {
    if (maslov[j] <= 0) {
      std::ostringstream os;
      os << "Maslov index m_" << j + 1 << " = " << maslov[j] << " must be positive on a torus cycle";
      fail(ErrorCode::InvalidMaslov, os.str());
    }
  }
  if (n_max < 0) fail(ErrorCode::Input, "N_max must be >= 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) fail(ErrorCode::Input, "hbar must be positive");
  const double count = std::pow(static_cast<double>(n_max) + 1.0, static_cast<double>(maslov.size()));
  if (count > 5e7) fail(ErrorCode::Input, "quantum-number grid too large");
}

std::vector<std::vector<int>> quantum_grid(int n, int n_max) {
  std::vector<std::vector<int>> grid;
  std::vector<int> cur(n, 0);
  while (true) {
    grid.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur[k] == n_max) cur[k--] = 0;
    if (k < 0) break;
    ++cur[k];
  }
  return grid;
}

template <bool Parallel>
EBKSpectrum levels_impl(const ActionHamiltonian& k, std::span<const int> maslov, int n_max, double hbar) {
  check_quantization_args(maslov, n_max, hbar);
  const int n = static_cast<int>(maslov.size());
  if (k.n() != n) fail(ErrorCode::Dimension, "K and Maslov tuple have different dimension");

  EBKSpectrum spec;
  spec.hbar = hbar;
  for (int j = 0; j < n; ++j)
    if (maslov[j] % 2 != 0) {
      std::ostringstream os;
      os << "odd Maslov index m_" << j + 1 << " = " << maslov[j]
         << "; cycles on an oriented invariant torus have even index";
      spec.warnings.push_back(os.str());
    }

  const auto grid = quantum_grid(n, n_max);
  const long count = static_cast<long>(grid.size());
  spec.entries.resize(count);
  std::vector<std::string> errors(count);

#pragma omp parallel for schedule(static) if (Parallel)
  for (long i = 0; i < count; ++i) {
    auto& e = spec.entries[i];
    e.quanta = grid[i];
    e.maslov.assign(maslov.begin(), maslov.end());
    e.actions.resize(n);
    for (int j = 0; j < n; ++j) e.actions[j] = (grid[i][j] + 0.25 * maslov[j]) * hbar;
    try {
      e.radii = torus_radii_from_actions(e.actions);
      e.energy = k(e.actions);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  }
  for (long i = 0; i < count; ++i)
    if (!errors[i].empty()) fail(ErrorCode::Evaluation, errors[i]);

  std::stable_sort(spec.entries.begin(), spec.entries.end(),
                   [](const EBKEntry& a, const EBKEntry& b) { return a.energy < b.energy; });
  return spec;
}

// Root of f on [lo, hi] with f(lo) < 0 < f(hi), to full double precision.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

// Bisection between an inside point (V < E) and an outside point (V > E).
double bisect_turning_point(const std::function<double(double)>& v, double energy, double inside, double outside) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (std::abs(outside - inside) <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    if (v(mid) < energy) inside = mid;
    else outside = mid;
  }
  return 0.5 * (inside + outside);
}

double find_turning_point(const std::function<double(double)>& v, double energy, double x0, double dir) {
  double inside = x0;
  double step = 1e-3 * std::max(1.0, std::abs(x0));
  for (int it = 0; it < 200; ++it) {
    const double x = x0 + dir * step;
    const double vx = v(x);
    if (!std::isfinite(vx)) break;
    if (vx > energy) return bisect_turning_point(v, energy, inside, x);
    inside = x;
    step *= 2.0;
    if (step > 1e12) break;
  }
  fail(ErrorCode::NonCompactOrbit, dir > 0 ? "no turning point found to the right; the level set is open"
                                           : "no turning point found to the left; the level set is open");
}

// Momentum p with H(x, p) = E on the side `dir` of p = 0.
double momentum_on_level(const Hamiltonian1D& ham, double x, double energy, double dir) {
  auto f = [&](double p) { return ham.h(x, dir * p) - energy; };
  if (f(0.0) >= 0.0) return 0.0;
  double hi = 1.0;
  for (int it = 0; f(hi) <= 0.0; ++it) {
    hi *= 2.0;
    if (it > 200) fail(ErrorCode::NonCompactOrbit, "momentum grows without bound on the level set");
  }
  return dir * bracketed_root(f, 0.0, hi);
}

}  // namespace

ActionHamiltonian::ActionHamiltonian(int n, Fn k, Grad gradient, bool monotone, std::string name)
    : n_(n), k_(std::move(k)), grad_(std::move(gradient)), monotone_(monotone), name_(std::move(name)) {
  if (n_ < 1) fail(ErrorCode::Dimension, "action Hamiltonian needs n >= 1");
  if (!k_) fail(ErrorCode::Input, "action Hamiltonian needs an evaluable K");
}

ActionHamiltonian ActionHamiltonian::oscillator(std::vector<double> omega) {
  if (omega.empty()) fail(ErrorCode::Dimension, "oscillator needs at least one frequency");
  for (double w : omega)
    if (!(w > 0.0) || !std::isfinite(w)) fail(ErrorCode::Input, "oscillator frequencies must be positive");
  const int n = static_cast<int>(omega.size());
  auto k = [omega](std::span<const double> a) {
    double e = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) e += omega[j] * a[j];
    return e;
  };
  auto g = [omega](std::span<const double>) { return omega; };
  return ActionHamiltonian(n, k, g, true, "oscillator");
}

ActionHamiltonian ActionHamiltonian::power(int n, double a) {
  if (a == 0.0 || !std::isfinite(a)) fail(ErrorCode::Input, "power exponent must be nonzero and finite");
  auto k = [a](std::span<const double> act) {
    double e = 0.0;
    for (double v : act) e += std::pow(v, a);
    return e;
  };
  auto g = [a](std::span<const double> act) {
    std::vector<double> out;
    for (double v : act) out.push_back(a * std::pow(v, a - 1.0));
    return out;
  };
  std::ostringstream name;
  name << "power:" << a;
  return ActionHamiltonian(n, k, g, a > 0.0, name.str());
}

ActionHamiltonian ActionHamiltonian::table(std::vector<double> actions, std::vector<double> energies) {
  if (actions.size() != energies.size() || actions.size() < 2)
    fail(ErrorCode::Input, "table needs at least two (I, E) pairs of equal length");
  std::vector<std::size_t> order(actions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return actions[a] < actions[b]; });
  std::vector<double> xs, ys;
  for (auto i : order) {
    if (!std::isfinite(actions[i]) || !std::isfinite(energies[i])) fail(ErrorCode::Input, "table has non-finite values");
    xs.push_back(actions[i]);
    ys.push_back(energies[i]);
  }
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) fail(ErrorCode::Input, "table actions must be distinct");
  bool increasing = true;
  for (std::size_t i = 1; i < ys.size(); ++i) increasing = increasing && ys[i] > ys[i - 1];

  auto segment = [xs](double a) {
    if (!(a >= xs.front() && a <= xs.back())) {
      std::ostringstream os;
      os << "action " << a << " outside table range [" << xs.front() << ", " << xs.back() << "]";
      throw std::out_of_range(os.str());
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), a);
    std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
    return hi - 1;
  };
  auto k = [xs, ys, segment](std::span<const double> act) {
    const auto s = segment(act[0]);
    const double t = (act[0] - xs[s]) / (xs[s + 1] - xs[s]);
    return ys[s] + t * (ys[s + 1] - ys[s]);
  };
  auto g = [xs, ys, segment](std::span<const double> act) {
    const auto s = segment(act[0]);
    return std::vector<double>{(ys[s + 1] - ys[s]) / (xs[s + 1] - xs[s])};
  };
  return ActionHamiltonian(1, k, g, increasing, "table");
}

double ActionHamiltonian::operator()(std::span<const double> actions) const {
  if (static_cast<int>(actions.size()) != n_) fail(ErrorCode::Dimension, "action tuple has wrong length");
  double e;
  try {
    e = k_(actions);
  } catch (const std::exception& ex) {
    fail(ErrorCode::Evaluation, "K failed at I = " + tuple_text(actions) + ": " + ex.what());
  }
  if (!std::isfinite(e)) fail(ErrorCode::Evaluation, "K is not finite at I = " + tuple_text(actions));
  return e;
}

std::vector<double> ActionHamiltonian::finite_difference_gradient(std::span<const double> actions) const {
  std::vector<double> g(n_);
  std::vector<double> a(actions.begin(), actions.end());
  for (int j = 0; j < n_; ++j) {
    const double h = fd_step(actions[j]);
    a[j] = actions[j] + h;
    const double up = (*this)(a);
    a[j] = actions[j] - h;
    const double down = (*this)(a);
    a[j] = actions[j];
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

std::vector<double> ActionHamiltonian::gradient(std::span<const double> actions) const {
  if (!grad_) return finite_difference_gradient(actions);
  std::vector<double> g;
  try {
    g = grad_(actions);
  } catch (const std::exception& ex) {
    fail(ErrorCode::Evaluation, "gradient failed at I = " + tuple_text(actions) + ": " + ex.what());
  }
  if (static_cast<int>(g.size()) != n_) fail(ErrorCode::Evaluation, "gradient has wrong length");
  return g;
}

ActionHamiltonianAudit audit(const ActionHamiltonian& k, std::uint64_t seed, long points, double upper) {
  if (points < 1 || !(upper > 0.0)) fail(ErrorCode::Input, "audit needs points >= 1 and a positive range");
  ActionHamiltonianAudit out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> a(k.n());
  for (long i = 0; i < points; ++i) {
    for (auto& v : a) v = upper * (1.0 - unit(rng));  // (0, upper]
    const auto g = k.gradient(a);
    const auto fd = k.finite_difference_gradient(a);
    for (int j = 0; j < k.n(); ++j) {
      if (k.monotone() && !(g[j] > 0.0)) ++out.nonpositive_gradient;
      const double scale = std::max({std::abs(g[j]), std::abs(fd[j]), 1e-12});
      out.max_gradient_mismatch = std::max(out.max_gradient_mismatch, std::abs(g[j] - fd[j]) / scale);
    }
    ++out.points;
  }
  out.ok = out.nonpositive_gradient == 0 && out.max_gradient_mismatch <= 1e-6;
  return out;
}

double action_hessian_scale(const ActionHamiltonian& k, std::span<const double> actions) {
  std::vector<double> a(actions.begin(), actions.end());
  double worst = 0.0;
  for (int j = 0; j < k.n(); ++j) {
    const double h = fd_step(actions[j]);
    a[j] = actions[j] + h;
    const auto up = k.gradient(a);
    a[j] = actions[j] - h;
    const auto down = k.gradient(a);
    a[j] = actions[j];
    for (int i = 0; i < k.n(); ++i) worst = std::max(worst, std::abs((up[i] - down[i]) / (2.0 * h)));
  }
  return worst;
}

std::vector<std::vector<double>> quantized_actions(std::span<const int> maslov, int n_max, double hbar) {
  check_quantization_args(maslov, n_max, hbar);
  const int n = static_cast<int>(maslov.size());
  std::vector<std::vector<double>> out;
  for (const auto& q : quantum_grid(n, n_max)) {
    std::vector<double> a(n);
    for (int j = 0; j < n; ++j) a[j] = (q[j] + 0.25 * maslov[j]) * hbar;
    out.push_back(std::move(a));
  }
  return out;
}

EBKSpectrum energy_levels(const ActionHamiltonian& k, std::span<const int> maslov, int n_max, double hbar) {
  return levels_impl<true>(k, maslov, n_max, hbar);
}

EBKSpectrum energy_levels_serial(const ActionHamiltonian& k, std::span<const int> maslov, int n_max,
                                 double hbar) {
  return levels_impl<false>(k, maslov, n_max, hbar);
}

double ground_bound(const ActionHamiltonian& k, double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) fail(ErrorCode::Input, "hbar must be positive");
  const std::vector<double> half(k.n(), 0.5 * hbar);
  return k(half);
}

std::vector<double> torus_radii_from_actions(std::span<const double> actions) {
  if (actions.empty()) fail(ErrorCode::Dimension, "no actions given");
  std::vector<double> r;
  r.reserve(actions.size());
  for (double a : actions) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      std::ostringstream os;
      os << "action " << a << " must be positive for a non-degenerate torus";
      fail(ErrorCode::Input, os.str());
    }
    r.push_back(std::sqrt(2.0 * a));
  }
  return r;
}

CapacityCondition capacity_condition(const EBKEntry& entry, double hbar) {
  if (entry.radii.empty()) fail(ErrorCode::Input, "spectrum entry has no torus radii");
  CapacityCondition out;
  out.capacity = capacity(make_solid_torus(entry.radii)).value;
  out.bound = 0.5 * planck(hbar);
  out.satisfied = out.capacity >= out.bound - 1e-12;
  return out;
}

EnergyBoundReport verify_energy_bound(const ActionHamiltonian& k, const EBKSpectrum& spectrum) {
  if (!k.monotone())
    fail(ErrorCode::TheoremHypothesis, "the ground-energy bound needs all frequencies dK/dI_j > 0");
  EnergyBoundReport rep;
  rep.ground = ground_bound(k, spectrum.hbar);
  rep.min_margin = INFINITY;
  for (const auto& e : spectrum.entries) {
    const double m = e.energy - rep.ground;
    rep.margins.push_back(m);
    rep.min_margin = std::min(rep.min_margin, m);
    if (m < -1e-12) ++rep.violations;
  }
  rep.passed = rep.violations == 0;
  return rep;
}

std::vector<PlaneAreaCheck> projection_area_bound(const EBKEntry& entry, double hbar) {
  if (entry.radii.empty()) fail(ErrorCode::Input, "spectrum entry has no torus radii");
  std::vector<PlaneAreaCheck> out;
  const double bound = 0.5 * planck(hbar);
  for (std::size_t j = 0; j < entry.radii.size(); ++j) {
    const double area = kPi * entry.radii[j] * entry.radii[j];
    out.push_back({static_cast<int>(j + 1), area, bound, area >= bound - 1e-12});
  }
  return out;
}

double action_quadrature_1d(const Hamiltonian1D& ham, double energy) {
  if (!ham.h) fail(ErrorCode::Input, "no Hamiltonian given");
  if (!std::isfinite(energy)) fail(ErrorCode::Input, "energy must be finite");
  const std::function<double(double)> v = [&](double x) { return ham.h(x, 0.0); };
  const double x0 = ham.x_inside;
  if (!(v(x0) < energy)) {
    std::ostringstream os;
    os << "E = " << energy << " does not exceed V(" << x0 << ") = " << v(x0) << "; the level set is empty there";
    fail(ErrorCode::EmptyLevelSet, os.str());
  }
  const double left = find_turning_point(v, energy, x0, -1.0);
  const double right = find_turning_point(v, energy, x0, +1.0);
  const double center = 0.5 * (left + right);
  const double half = 0.5 * (right - left);

  // x = center + half sin(theta) removes the square-root behaviour at the
  // turning points.
  auto integrand = [&](double theta) {
    const double x = center + half * std::sin(theta);
    const double width = momentum_on_level(ham, x, energy, +1.0) - momentum_on_level(ham, x, energy, -1.0);
    return width * half * std::cos(theta);
  };
  double err = 0.0;
  const double area = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, -kPi / 2.0, kPi / 2.0, 20, 1e-13, &err);
  return area / (2.0 * kPi);
}

}  // namespace symcap

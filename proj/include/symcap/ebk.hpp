#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symcap {

/// Energy as a function of the action variables, E = K(I_1..I_n).
class ActionHamiltonian {
 public:
  using Fn = std::function<double(std::span<const double>)>;
  using Grad = std::function<std::vector<double>(std::span<const double>)>;

  /// `gradient` may be empty, in which case central differences are used.
  /// `monotone` claims dK/dI_j > 0 on the positive orthant.
  ActionHamiltonian(int n, Fn k, Grad gradient, bool monotone, std::string name = "custom");

  /// K(I) = sum_j omega_j I_j
  static ActionHamiltonian oscillator(std::vector<double> omega);
  /// K(I) = sum_j I_j^a; monotone for a > 0.
  static ActionHamiltonian power(int n, double a);
  /// n = 1, piecewise-linear interpolation of (I, E) samples sorted by I.
  /// Evaluation outside [I_min, I_max] throws Evaluation.
  static ActionHamiltonian table(std::vector<double> actions, std::vector<double> energies);

  int n() const { return n_; }
  bool monotone() const { return monotone_; }
  const std::string& name() const { return name_; }

  /// Throws Evaluation (with the offending action tuple) on failure or a
  /// non-finite result.
  double operator()(std::span<const double> actions) const;
  std::vector<double> gradient(std::span<const double> actions) const;
  std::vector<double> finite_difference_gradient(std::span<const double> actions) const;

 private:
  int n_;
  Fn k_;
  Grad grad_;
  bool monotone_;
  std::string name_;
};

/// Spot checks of the ActionHamiltonian contract.
struct ActionHamiltonianAudit {
  long points = 0;
  long nonpositive_gradient = 0;  // only counted when monotone is claimed
  double max_gradient_mismatch = 0.0;  // relative, analytic vs central differences
  bool ok = false;
};

/// Samples `points` actions in (0, upper]^n. Gradient agreement threshold 1e-6.
ActionHamiltonianAudit audit(const ActionHamiltonian& k, std::uint64_t seed, long points = 1000,
                             double upper = 10.0);

/// Detects degeneracy of the angle-action representation: the Hessian of K
/// (central differences) at `actions`, returning its largest absolute entry.
double action_hessian_scale(const ActionHamiltonian& k, std::span<const double> actions);

struct EBKEntry {
  std::vector<int> quanta;  // N_j >= 0
  std::vector<int> maslov;  // m_j
  std::vector<double> actions;
  std::vector<double> radii;
  double energy = 0.0;
};

struct EBKSpectrum {
  std::vector<EBKEntry> entries;
  double hbar = 1.0;
  std::vector<std::string> warnings;  // odd Maslov indices
};

/// Every tuple 0 <= N_j <= n_max (last index fastest) mapped to
/// I_j = (N_j + m_j / 4) hbar. Throws InvalidMaslov if some m_j <= 0.
std::vector<std::vector<double>> quantized_actions(std::span<const int> maslov, int n_max, double hbar);

/// E_N = K(actions(N)), sorted by energy (ties keep tuple order). Parallel
/// over tuples; matches energy_levels_serial exactly.
EBKSpectrum energy_levels(const ActionHamiltonian& k, std::span<const int> maslov, int n_max, double hbar);
EBKSpectrum energy_levels_serial(const ActionHamiltonian& k, std::span<const int> maslov, int n_max,
                                 double hbar);

/// K(hbar/2, ..., hbar/2)
double ground_bound(const ActionHamiltonian& k, double hbar);

/// R_j = sqrt(2 I_j)
std::vector<double> torus_radii_from_actions(std::span<const double> actions);

struct CapacityCondition {
  double capacity = 0.0;  // pi min_j R_j^2
  double bound = 0.0;     // h / 2
  bool satisfied = false;
};

CapacityCondition capacity_condition(const EBKEntry& entry, double hbar);

struct EnergyBoundReport {
  double ground = 0.0;
  std::vector<double> margins;  // E_N - ground, entry order
  double min_margin = 0.0;
  long violations = 0;
  bool passed = false;
};

/// Requires k.monotone(); checks every E_N >= K(hbar/2..) - 1e-12.
EnergyBoundReport verify_energy_bound(const ActionHamiltonian& k, const EBKSpectrum& spectrum);

struct PlaneAreaCheck {
  int j = 0;
  double area = 0.0;  // pi R_j^2, the shadow of the solid torus on plane j
  double bound = 0.0;
  bool satisfied = false;
};

std::vector<PlaneAreaCheck> projection_area_bound(const EBKEntry& entry, double hbar);

/// H(x, p) of one degree of freedom. The level set H = E is assumed to be a
/// closed curve around `x_inside`, with H(x, .) minimized at p = 0 so that
/// V(x) = H(x, 0) locates the turning points.
struct Hamiltonian1D {
  std::function<double(double, double)> h;
  double x_inside = 0.0;
};

/// I = (1/2 pi) * enclosed phase-plane area of H = E.
/// Throws EmptyLevelSet when V(x_inside) >= E, NonCompactOrbit when no
/// turning point is found on one side.
double action_quadrature_1d(const Hamiltonian1D& ham, double energy);

}  // namespace symcap

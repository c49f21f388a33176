#pragma once

// Phase-space conventions shared by every module.
//
// Coordinates are ordered z = (x_1..x_n, p_1..p_n); conjugate pair j (1-based)
// lives at indices (j-1, n+j-1). The standard matrix is J = [[0, I], [-I, 0]],
// so that sigma(z, z') = (Jz).z' = p.x' - p'.x.

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symcap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultSymplecticTol = 1e-9;

/// Planck's constant in units where the reduced constant is `hbar`.
inline constexpr double planck(double hbar) { return 2.0 * kPi * hbar; }

Matrix standard_form(int n);

/// Induced infinity norm (maximum absolute row sum).
double inf_norm(const Matrix& m);

/// sigma(z, w) = (Jz).w
double symplectic_form(const Vector& z, const Vector& w);

/// Splitmix64 mix of a base seed and a stream index; used for per-trial seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Rows (j-1, n+j-1) of the 2n x 2n identity, i.e. the orthogonal projector
/// onto conjugate plane j. Throws Dimension if j is outside 1..n.
Eigen::Matrix<double, 2, Eigen::Dynamic> conjugate_plane(int n, int j);

class PhasePoint {
 public:
  explicit PhasePoint(Vector coords);
  static PhasePoint origin(int n);

  int n() const { return static_cast<int>(coords_.size() / 2); }
  const Vector& coords() const { return coords_; }
  double x(int j) const { return coords_(j - 1); }
  double p(int j) const { return coords_(n() + j - 1); }

  bool operator==(const PhasePoint& other) const { return coords_ == other.coords_; }

 private:
  Vector coords_;
};

struct SymplecticCheck {
  bool symplectic = false;
  double residual = 0.0;  // ||M^T J M - J||_inf
};

/// True iff ||M^T J M - J||_inf <= tol * ||M||_inf^2. Throws Dimension on odd
/// or non-square input.
SymplecticCheck is_symplectic(const Matrix& m, double tol = kDefaultSymplecticTol);

/// A 2n x 2n matrix certified to satisfy S^T J S = J and det S = 1.
class SymplecticMatrix {
 public:
  /// Validates and wraps `m`; throws Validation when either certificate fails.
  static SymplecticMatrix from(Matrix m, double tol = kDefaultSymplecticTol);
  static SymplecticMatrix identity(int n);

  int n() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  double residual() const { return residual_; }

  /// Exact inverse -J S^T J (a signed permutation of S^T, no rounding).
  SymplecticMatrix inverse() const;
  SymplecticMatrix operator*(const SymplecticMatrix& other) const;
  Vector apply(const Vector& z) const { return m_ * z; }

 private:
  SymplecticMatrix(Matrix m, double residual) : m_(std::move(m)), residual_(residual) {}
  Matrix m_;
  double residual_ = 0.0;
};

/// H(z) = 1/2 z.Rz with R symmetric positive definite.
class QuadraticHamiltonian {
 public:
  explicit QuadraticHamiltonian(Matrix hessian);

  int n() const { return static_cast<int>(r_.rows() / 2); }
  const Matrix& hessian() const { return r_; }
  double energy(const Vector& z) const { return 0.5 * z.dot(r_ * z); }

 private:
  Matrix r_;
};

/// Checks symmetry (1e-12 relative) and positive definiteness with the
/// eigenvalue floor 1e-12 * ||R||; the Validation message names the offending
/// eigenvalue.
void require_positive_definite(const Matrix& r, const char* what);

/// Deterministic coordinate-mixing symplectic matrix:
/// exp(J A1) * (pair rotations) * exp(J A2) with A1, A2 random symmetric.
SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread = 0.5);

/// exp(t J R), the time-t flow of H.
SymplecticMatrix quad_propagator(const QuadraticHamiltonian& h, double t);

/// max_t |H(z(t)) - H(z0)| / H(z0) along the exact flow.
double flow_energy_drift(const QuadraticHamiltonian& h, const PhasePoint& z0,
                         std::span<const double> times);

}  // namespace symcap

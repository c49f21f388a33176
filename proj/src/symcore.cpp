#include "symcap/symcore.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0) {
    std::ostringstream os;
    os << what << " must be square of even order >= 2, got " << m.rows() << "x" << m.cols();
    fail(ErrorCode::Dimension, os.str());
  }
}

Matrix random_symmetric(int dim, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) g(i, k) = gauss(rng);
  return scale * (g + g.transpose()) / std::sqrt(2.0);
}

}  // namespace

Matrix standard_form(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double symplectic_form(const Vector& z, const Vector& w) {
  const auto n = z.size() / 2;
  return z.tail(n).dot(w.head(n)) - w.tail(n).dot(z.head(n));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Eigen::Matrix<double, 2, Eigen::Dynamic> conjugate_plane(int n, int j) {
  if (j < 1 || j > n) {
    std::ostringstream os;
    os << "conjugate pair index " << j << " outside 1.." << n;
    fail(ErrorCode::Dimension, os.str());
  }
  Eigen::Matrix<double, 2, Eigen::Dynamic> p = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, 2 * n);
  p(0, j - 1) = 1.0;
  p(1, n + j - 1) = 1.0;
  return p;
}

PhasePoint::PhasePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || coords_.size() % 2 != 0)
    fail(ErrorCode::Dimension, "phase point needs an even number (>= 2) of coordinates");
  if (!coords_.allFinite()) fail(ErrorCode::Input, "phase point has non-finite coordinates");
}

PhasePoint PhasePoint::origin(int n) { return PhasePoint(Vector::Zero(2 * n)); }

SymplecticCheck is_symplectic(const Matrix& m, double tol) {
  require_even_square(m, "matrix");
  const Matrix j = standard_form(static_cast<int>(m.rows() / 2));
  const double residual = inf_norm(m.transpose() * j * m - j);
  const double scale = inf_norm(m);
  return {residual <= tol * scale * scale, residual};
}

SymplecticMatrix SymplecticMatrix::from(Matrix m, double tol) {
  if (!m.allFinite()) fail(ErrorCode::Input, "matrix has non-finite entries");
  const auto check = is_symplectic(m, tol);
  if (!check.symplectic) {
    std::ostringstream os;
    os << "matrix is not symplectic: ||M^T J M - J||_inf = " << check.residual;
    fail(ErrorCode::Validation, os.str());
  }
  // det S = +1; the residual test alone admits det = -1 only for gross violations,
  // so this guards orientation with a tolerance scaled by the conditioning.
  const double det = m.determinant();
  const double det_tol = static_cast<double>(m.rows()) * tol * inf_norm(m) * m.cwiseAbs().colwise().sum().maxCoeff();
  if (!(std::abs(det - 1.0) <= std::max(det_tol, tol))) {
    std::ostringstream os;
    os << "symplectic matrix must have det 1, got " << det;
    fail(ErrorCode::Validation, os.str());
  }
  return SymplecticMatrix(std::move(m), check.residual);
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  if (n < 1) fail(ErrorCode::Dimension, "n must be >= 1");
  return SymplecticMatrix(Matrix::Identity(2 * n, 2 * n), 0.0);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Matrix j = standard_form(n());
  return SymplecticMatrix(-j * m_.transpose() * j, residual_);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const {
  if (other.n() != n()) fail(ErrorCode::Dimension, "cannot compose symplectic matrices of different size");
  Matrix prod = m_ * other.m_;
  const auto check = is_symplectic(prod);
  return SymplecticMatrix(std::move(prod), check.residual);
}

void require_positive_definite(const Matrix& r, const char* what) {
  require_even_square(r, what);
  if (!r.allFinite()) fail(ErrorCode::Input, std::string(what) + " has non-finite entries");
  const double scale = std::max(r.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double asym = (r - r.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << what << " is not symmetric (max |R - R^T| = " << asym << ")";
    fail(ErrorCode::Validation, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (r + r.transpose()), Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues()(0);
  if (smallest <= 1e-12 * inf_norm(r)) {
    std::ostringstream os;
    os << what << " is not positive definite: eigenvalue " << smallest << " at or below floor "
       << 1e-12 * inf_norm(r);
    fail(ErrorCode::Validation, os.str());
  }
}

QuadraticHamiltonian::QuadraticHamiltonian(Matrix hessian) : r_(std::move(hessian)) {
  require_positive_definite(r_, "Hessian");
  r_ = 0.5 * (r_ + r_.transpose()).eval();
}

SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread) {
  if (n < 1) fail(ErrorCode::Dimension, "random_symplectic needs n >= 1");
  if (!(spread > 0.0) || !std::isfinite(spread)) fail(ErrorCode::Input, "spread must be positive and finite");

  std::mt19937_64 rng(seed);
  const int dim = 2 * n;
  const double scale = spread / std::sqrt(static_cast<double>(dim));
  const Matrix j = standard_form(n);

  const Matrix a1 = random_symmetric(dim, scale, rng);
  const Matrix a2 = random_symmetric(dim, scale, rng);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  Matrix rot = Matrix::Identity(dim, dim);
  for (int k = 0; k < n; ++k) {
    const double th = angle(rng);
    rot(k, k) = std::cos(th);
    rot(k, n + k) = std::sin(th);
    rot(n + k, k) = -std::sin(th);
    rot(n + k, n + k) = std::cos(th);
  }

  Matrix s = Matrix((j * a1).exp()) * rot * Matrix((j * a2).exp());
  return SymplecticMatrix::from(std::move(s));
}

SymplecticMatrix quad_propagator(const QuadraticHamiltonian& h, double t) {
  if (!std::isfinite(t)) fail(ErrorCode::Input, "propagation time must be finite");
  const Matrix gen = t * standard_form(h.n()) * h.hessian();
  Matrix s = gen.exp();
  try {
    return SymplecticMatrix::from(std::move(s));
  } catch (const Error& e) {
    fail(ErrorCode::Numerical, std::string("matrix exponential lost symplecticity: ") + e.what());
  }
}

double flow_energy_drift(const QuadraticHamiltonian& h, const PhasePoint& z0,
                         std::span<const double> times) {
  if (z0.n() != h.n()) fail(ErrorCode::Dimension, "phase point and Hamiltonian dimensions differ");
  const double e0 = h.energy(z0.coords());
  if (!(e0 > 0.0)) fail(ErrorCode::Degenerate, "H(z0) = 0; relative drift needs a nonzero initial point");
  double worst = 0.0;
  for (double t : times) {
    const Vector z = quad_propagator(h, t).apply(z0.coords());
    worst = std::max(worst, std::abs(h.energy(z) - e0) / e0);
  }
  return worst;
}

}  // namespace symcap

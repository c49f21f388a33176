#include "symcap/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

// The Hermitian matrix i R^{1/2} J R^{1/2} is similar to iJR, so its
// eigenvalues are +-mu_j. Eigenvectors a + ib of the positive half give the
// orthogonal O with O^T (R^{1/2} J R^{1/2}) O = J diag(mu, mu).
struct HermitianPencil {
  Matrix sqrt_r;
  Matrix inv_sqrt_r;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig;
};

HermitianPencil solve_pencil(const Matrix& r, bool vectors) {
  require_positive_definite(r, "Hessian");
  const int n = static_cast<int>(r.rows() / 2);
  Eigen::SelfAdjointEigenSolver<Matrix> reig(0.5 * (r + r.transpose()));
  HermitianPencil out;
  out.sqrt_r = reig.operatorSqrt();
  out.inv_sqrt_r = reig.operatorInverseSqrt();
  const Matrix b = out.sqrt_r * standard_form(n) * out.sqrt_r;
  const CMatrix herm = std::complex<double>(0.0, 1.0) * b.cast<std::complex<double>>();
  out.eig.compute(herm, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (out.eig.info() != Eigen::Success) fail(ErrorCode::Numerical, "Hermitian eigensolver did not converge");
  return out;
}

SymplecticSpectrum spectrum_from_mu(std::vector<double> mu) {
  SymplecticSpectrum spec;
  spec.mu = std::move(mu);
  for (double m : spec.mu) {
    spec.radii.push_back(std::sqrt(2.0 / m));
    spec.omega.push_back(m);
  }
  return spec;
}

}  // namespace

SymplecticSpectrum symplectic_spectrum(const Matrix& r) {
  const auto pencil = solve_pencil(r, false);
  const int n = static_cast<int>(r.rows() / 2);
  // eigenvalues are ascending: -mu_max..-mu_min, mu_min..mu_max
  std::vector<double> mu(n);
  for (int k = 0; k < n; ++k) mu[k] = pencil.eig.eigenvalues()(n + k);
  for (int k = 0; k < n; ++k) {
    if (!(mu[k] > 0.0)) fail(ErrorCode::Numerical, "non-positive symplectic eigenvalue");
  }
  return spectrum_from_mu(std::move(mu));
}

WilliamsonDecomposition williamson_decompose(const Matrix& r) {
  const auto pencil = solve_pencil(r, true);
  const int n = static_cast<int>(r.rows() / 2);
  const int dim = 2 * n;

  Matrix o(dim, dim);
  std::vector<double> mu(n);
  for (int k = 0; k < n; ++k) {
    const int col = n + k;
    mu[k] = pencil.eig.eigenvalues()(col);
    const auto v = pencil.eig.eigenvectors().col(col);
    // B a = mu b and B b = -mu a, so (b, a) fill the (x_k, p_k) columns.
    o.col(k) = std::sqrt(2.0) * v.imag();
    o.col(n + k) = std::sqrt(2.0) * v.real();
  }

  Vector d(dim);
  for (int k = 0; k < n; ++k) {
    if (!(mu[k] > 0.0)) fail(ErrorCode::Numerical, "non-positive symplectic eigenvalue");
    d(k) = d(n + k) = mu[k];
  }
  Matrix s = pencil.inv_sqrt_r * o * d.cwiseSqrt().asDiagonal();

  const Matrix diag = d.asDiagonal();
  const double residual = inf_norm(s.transpose() * r * s - diag);
  const double bound = 1e-8 * inf_norm(r);
  if (!(residual <= bound)) {
    std::ostringstream os;
    os << "Williamson residual " << residual << " exceeds " << bound << " (n=" << n
       << ", mu range " << mu.front() << ".." << mu.back() << ")";
    fail(ErrorCode::Numerical, os.str());
  }
  SymplecticMatrix sm = [&] {
    try {
      return SymplecticMatrix::from(std::move(s));
    } catch (const Error& e) {
      fail(ErrorCode::Numerical, std::string("Williamson basis is not symplectic: ") + e.what());
    }
  }();
  return {std::move(sm), spectrum_from_mu(std::move(mu)), residual};
}

std::vector<double> normal_radii(const Matrix& r, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) fail(ErrorCode::Input, "ellipsoid level must be positive");
  const auto spec = symplectic_spectrum(r);
  std::vector<double> radii;
  radii.reserve(spec.mu.size());
  for (double m : spec.mu) radii.push_back(std::sqrt(2.0 * level / m));
  return radii;
}

std::string spectrum_csv(const SymplecticSpectrum& spec) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "j,mu,radius,omega\n";
  for (int k = 0; k < spec.n(); ++k)
    os << k + 1 << ',' << spec.mu[k] << ',' << spec.radii[k] << ',' << spec.omega[k] << '\n';
  return os.str();
}

}  // namespace symcap

#pragma once

#include <string>
#include <vector>

#include "symcap/symcore.hpp"

namespace symcap {

/// Symplectic eigenvalues of a positive-definite Hessian, ascending, with the
/// normal-form radii of the unit ellipsoid 1/2 z.Rz <= 1 and the flow
/// frequencies. Radii are therefore descending.
struct SymplecticSpectrum {
  std::vector<double> mu;
  std::vector<double> radii;  // sqrt(2 / mu_j)
  std::vector<double> omega;  // rotation frequency of exp(tJR) in normal coordinates; equals mu

  int n() const { return static_cast<int>(mu.size()); }
};

struct WilliamsonDecomposition {
  SymplecticMatrix s;
  SymplecticSpectrum spectrum;
  double residual = 0.0;  // ||S^T R S - diag(mu, mu)||_inf
};

SymplecticSpectrum symplectic_spectrum(const Matrix& r);

/// S symplectic with S^T R S = diag(mu_1..mu_n, mu_1..mu_n). Throws Numerical
/// if the residual exceeds 1e-8 * ||R||_inf.
WilliamsonDecomposition williamson_decompose(const Matrix& r);

/// Radii R_j = sqrt(2 level / mu_j) of the ellipsoid 1/2 z.Rz <= level.
std::vector<double> normal_radii(const Matrix& r, double level);

/// CSV with header "j,mu,radius,omega"; j is 1-based.
std::string spectrum_csv(const SymplecticSpectrum& spec);

}  // namespace symcap

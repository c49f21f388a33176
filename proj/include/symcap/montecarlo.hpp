#pragma once

// Sampling estimators of the shadow areas. They share no code with the
// closed forms in squeeze.hpp and serve as their oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "symcap/symcore.hpp"

namespace symcap {

struct Point2 {
  double x;
  double y;
};

/// Andrew's monotone chain; returns the hull counter-clockwise.
std::vector<Point2> convex_hull(std::vector<Point2> pts);
double polygon_area(std::span<const Point2> poly);

struct McEstimate {
  double area = 0.0;
  double std_error = 0.0;  // zero for the hull estimator (biased low, no variance model)
  long samples = 0;
};

/// Convex-hull area of P S z for z uniform on the sphere |z| = R (the hull of
/// the ball's image equals the hull of the sphere's image).
McEstimate mc_projection_area(const Matrix& s, double radius, int j, long samples, std::uint64_t seed);
McEstimate mc_projection_area_serial(const Matrix& s, double radius, int j, long samples, std::uint64_t seed);

/// Rejection estimate of the slice area: points uniform in a planar window,
/// thickened by a band |off-plane| <= eps R; membership tested through
/// |S^{-1} w| <= R. A pilot pass (5% of the samples) fits the window to the
/// hits; two band widths are Richardson-extrapolated to eps -> 0.
McEstimate mc_intersection_area(const Matrix& s, double radius, int j, long samples, std::uint64_t seed,
                                double eps = 0.02);
McEstimate mc_intersection_area_serial(const Matrix& s, double radius, int j, long samples,
                                       std::uint64_t seed, double eps = 0.02);

/// Uniform point on the sphere |z| = R in dimension dim (normalized Gaussian).
template <class Rng>
Vector sample_sphere(int dim, double radius, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector z(dim);
  for (int i = 0; i < dim; ++i) z(i) = gauss(rng);
  return (radius / z.norm()) * z;
}

/// Uniform point in the ball |z| <= R (sphere point with radial correction U^{1/dim}).
template <class Rng>
Vector sample_ball(int dim, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  return std::pow(u, 1.0 / dim) * sample_sphere(dim, radius, rng);
}

}  // namespace symcap

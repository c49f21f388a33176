#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symcap/symcore.hpp"

namespace symcap {

/// Shadow of S(B(R)) (+ shift) on conjugate plane j.
struct ShadowReport {
  int j = 0;
  double projection_area = 0.0;
  double intersection_area = 0.0;
  double projection_ratio = 0.0;    // projection_area / (pi R^2)
  double intersection_ratio = 0.0;  // intersection_area / (pi R^2)
  Eigen::Vector2d shadow_center = Eigen::Vector2d::Zero();
};

/// Area of the orthogonal projection of S(B(R)) on plane j:
/// pi R^2 sqrt(det(P S S^T P^T)).
double projection_area(const SymplecticMatrix& s, double radius, int j);

/// Area of S(B(R)) intersected with plane j: pi R^2 / sqrt(det(P (S S^T)^{-1} P^T)).
double intersection_area(const SymplecticMatrix& s, double radius, int j);

/// Both areas for the affine image S(B(R)) + shift; the shift only moves the
/// shadow center.
ShadowReport shadow_report(const SymplecticMatrix& s, const Vector& shift, double radius, int j);

struct NonsqueezeConfig {
  int n = 1;
  long trials = 1;
  std::uint64_t seed = 0;
  double radius = 1.0;
  double spread = 0.5;
  double tol = 1e-9;        // relative slack on both area bounds
  bool translate = false;   // compose each trial with a random translation
};

struct NonsqueezeFailure {
  long trial = 0;
  int j = 0;
  double projection_ratio = 0.0;
  double intersection_ratio = 0.0;
  bool symplectic = true;
};

struct NonsqueezeReport {
  long trials = 0;
  long violations = 0;
  double min_projection_ratio = 0.0;
  double max_intersection_ratio = 0.0;
  double min_intersection_ratio = 0.0;
  /// planes where intersection = pi R^2 within tol (the J-invariant case)
  long intersection_equalities = 0;
  /// planes where intersection < pi R^2 (1 - tol)
  long intersection_below_bound = 0;
  long worst_trial = 0;
  int worst_j = 0;
  Matrix worst_case_matrix;
  std::vector<NonsqueezeFailure> failures;  // first 16, ordered by trial
};

/// Draws random_symplectic(n, derive_seed(seed, trial), spread) per trial and
/// checks projection >= pi R^2 (1 - tol), intersection <= pi R^2 (1 + tol)
/// and intersection <= projection on every plane.
/// Parallel over trials; the result equals nonsqueeze_verify_serial exactly.
NonsqueezeReport nonsqueeze_verify(const NonsqueezeConfig& config);
NonsqueezeReport nonsqueeze_verify_serial(const NonsqueezeConfig& config);

}  // namespace symcap

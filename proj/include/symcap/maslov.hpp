#pragma once

#include <vector>

#include "symcap/symcore.hpp"

namespace symcap {

/// Stacked frame [X; P] whose n columns span a Lagrangian plane.
class LagrangianFrame {
 public:
  /// Throws Validation if [X; P] is rank deficient or not isotropic.
  LagrangianFrame(Matrix x, Matrix p);

  int n() const { return static_cast<int>(x_.rows()); }
  const Matrix& x() const { return x_; }
  const Matrix& p() const { return p_; }

  /// Orthonormal representative U = (X + iP) G, G real; unitary because the
  /// plane is Lagrangian.
  CMatrix unitary() const;

 private:
  Matrix x_;
  Matrix p_;
};

/// Sampled path of Lagrangian frames at increasing parameters.
class LagrangianLoop {
 public:
  /// Validates frame dimensions, increasing parameters and (when `closed`)
  /// closure of the endpoint planes within 1e-8 (largest principal angle).
  LagrangianLoop(std::vector<LagrangianFrame> frames, std::vector<double> params, bool closed = true);

  int n() const { return frames_.front().n(); }
  const std::vector<LagrangianFrame>& frames() const { return frames_; }
  const std::vector<double>& params() const { return params_; }
  bool closed() const { return closed_; }
  double closure_gap() const { return closure_gap_; }

  LagrangianLoop reversed() const;
  /// The loop traversed k times (k >= 1).
  LagrangianLoop repeated(int k) const;

 private:
  std::vector<LagrangianFrame> frames_;
  std::vector<double> params_;
  bool closed_;
  double closure_gap_ = 0.0;
};

struct MaslovResult {
  int index = 0;
  double raw_winding = 0.0;
  int refinement_depth = 0;
};

/// w = (X + iP)(X - iP)^{-1}, symmetric unitary, independent of the frame.
CMatrix souriau_map(const LagrangianFrame& frame);

/// Sine of the largest principal angle between the planes of two frames.
double plane_distance(const LagrangianFrame& a, const LagrangianFrame& b);

/// Winding number of det w along the loop. Steps whose det-phase or plane
/// angles reach pi/2 are bisected along the U(n) geodesic (up to depth 20).
/// Throws Closure for open loops, SamplingTooCoarse when a step is ambiguous
/// or refinement is exhausted, Numerical if the winding is not within 0.1 of
/// an integer.
MaslovResult maslov_index(const LagrangianLoop& loop);

/// Tangent-plane frames of T^n(R_1..R_n) along the j-th basic cycle, t in
/// [0, 2 pi] sampled at `samples` + 1 points (the last closes the loop).
LagrangianLoop torus_cycle_loop(const std::vector<double>& radii, int j, int samples);

/// Frame-wise image [X; P] -> S [X; P].
LagrangianLoop transport_loop(const LagrangianLoop& loop, const SymplecticMatrix& s);

}  // namespace symcap

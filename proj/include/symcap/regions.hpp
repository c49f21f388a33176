#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "symcap/symcore.hpp"

namespace symcap {

struct PhaseRegion;

/// |z - center| <= radius
struct Ball {
  PhasePoint center;
  double radius;
};

/// 1/2 (z - c).M(z - c) <= level
struct Ellipsoid {
  PhasePoint center;
  Matrix hessian;
  double level;
};

/// D^2(R_1) x ... x D^2(R_n), centered at the origin.
struct SolidTorus {
  std::vector<double> radii;
};

/// Z_j(center, r): (x_j - c_xj)^2 + (p_j - c_pj)^2 <= r^2, other coordinates free.
struct Cylinder {
  int j;  // 1-based conjugate pair
  PhasePoint center;
  double radius;
};

/// { S z + shift : z in inner }
struct AffineImage {
  SymplecticMatrix s;
  PhasePoint shift;
  std::shared_ptr<const PhaseRegion> inner;
};

struct PhaseRegion {
  std::variant<Ball, Ellipsoid, SolidTorus, Cylinder, AffineImage> shape;

  int n() const;
};

/// Smart constructors validate parameters (Input/Validation/Dimension errors).
PhaseRegion make_ball(PhasePoint center, double radius);
PhaseRegion make_ellipsoid(PhasePoint center, Matrix hessian, double level);
PhaseRegion make_solid_torus(std::vector<double> radii);
PhaseRegion make_cylinder(int j, PhasePoint center, double radius);
PhaseRegion make_affine_image(SymplecticMatrix s, PhasePoint shift, PhaseRegion inner);

/// Capacity in action units. For the supported shapes every symplectic
/// capacity agrees, so the value is exact and also pins the lower/upper
/// Gromov capacities; `lower`/`upper` are only wider for sandwich bounds.
struct CapacityValue {
  double value = 0.0;
  bool exact = true;
  double lower = 0.0;
  double upper = 0.0;
};

CapacityValue capacity(const PhaseRegion& region);

/// lambda * region about the origin. Throws Input for lambda == 0.
PhaseRegion scale_region(const PhaseRegion& region, double lambda);

/// Image under z -> S z + shift; nested affine layers are collapsed.
PhaseRegion map_region(const PhaseRegion& region, const SymplecticMatrix& s, const PhasePoint& shift);

/// Capacity from certified inclusions B(inner_r) in Omega in Z_j(outer_r).
CapacityValue sandwich_capacity(double inner_r, double outer_r, int j);

struct InclusionResult {
  bool included = false;
  /// true when decided by a closed-form criterion; false means sampling
  /// found no counterexample ("true at confidence") or found a witness.
  bool analytic = true;
  std::optional<PhasePoint> witness;  // point of `inner` outside `outer`
  long samples = 0;
};

/// Supported (centered, same n): Ball/Ellipsoid/SolidTorus into Cylinder or
/// SolidTorus, Ball or Ellipsoid into Ellipsoid, and zero-shift AffineImage of
/// any of these as `inner`. Anything else throws Unsupported.
InclusionResult inclusion_check(const PhaseRegion& inner, const PhaseRegion& outer,
                                std::uint64_t seed = 0, long samples = 100000);

}  // namespace symcap

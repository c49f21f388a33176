#include "symcap/regions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "symcap/errors.hpp"
#include "symcap/williamson.hpp"

namespace symcap {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    fail(ErrorCode::Input, os.str());
  }
}

void require_same_n(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (n=" << a << " vs n=" << b << ")";
    fail(ErrorCode::Dimension, os.str());
  }
}

bool centered(const PhasePoint& c) { return c.coords().isZero(0.0); }

constexpr double kSlack = 1e-12;

// Inner sets reduced to one of two normal forms.
struct EllipsoidalSet {
  Matrix c;  // set = { C u : |u| <= 1 }
};
struct TorusImage {
  Matrix a;  // set = { A t : t in D(R_1) x ... x D(R_n) }
  std::vector<double> radii;
  bool plain;  // A is the identity
};
using InnerForm = std::variant<EllipsoidalSet, TorusImage>;

// Outer sets reduced to one of three normal forms.
struct CylinderSet {
  int j;
  double r;
};
struct TorusSet {
  std::vector<double> radii;
};
struct EllipsoidSet {
  Matrix m;
  double level;
};
using OuterForm = std::variant<CylinderSet, TorusSet, EllipsoidSet>;

[[noreturn]] void uncentered() {
  fail(ErrorCode::Unsupported, "inclusion_check needs centered regions (zero centers and shifts)");
}

InnerForm reduce_inner(const PhaseRegion& region) {
  return std::visit(
      Overloaded{
          [](const Ball& b) -> InnerForm {
            if (!centered(b.center)) uncentered();
            return EllipsoidalSet{b.radius * Matrix::Identity(2 * b.center.n(), 2 * b.center.n())};
          },
          [](const Ellipsoid& e) -> InnerForm {
            if (!centered(e.center)) uncentered();
            Eigen::SelfAdjointEigenSolver<Matrix> eig(e.hessian / (2.0 * e.level));
            return EllipsoidalSet{eig.operatorInverseSqrt()};
          },
          [](const SolidTorus& t) -> InnerForm {
            const int dim = 2 * static_cast<int>(t.radii.size());
            return TorusImage{Matrix::Identity(dim, dim), t.radii, true};
          },
          [](const Cylinder&) -> InnerForm {
            fail(ErrorCode::Unsupported, "a cylinder is unbounded and cannot be an inner region");
          },
          [](const AffineImage& a) -> InnerForm {
            if (!centered(a.shift)) uncentered();
            auto inner = reduce_inner(*a.inner);
            if (auto* e = std::get_if<EllipsoidalSet>(&inner)) return EllipsoidalSet{a.s.matrix() * e->c};
            auto& t = std::get<TorusImage>(inner);
            return TorusImage{a.s.matrix() * t.a, t.radii, false};
          },
      },
      region.shape);
}

// Returns the outer normal form and the linear map `back` such that
// inner' = back^{-1} inner is tested against outer'.
OuterForm reduce_outer(const PhaseRegion& region, Matrix& pullback) {
  return std::visit(
      Overloaded{
          [](const Ball& b) -> OuterForm {
            if (!centered(b.center)) uncentered();
            const int dim = 2 * b.center.n();
            return EllipsoidSet{2.0 * Matrix::Identity(dim, dim), b.radius * b.radius};
          },
          [](const Ellipsoid& e) -> OuterForm {
            if (!centered(e.center)) uncentered();
            return EllipsoidSet{e.hessian, e.level};
          },
          [](const SolidTorus& t) -> OuterForm { return TorusSet{t.radii}; },
          [](const Cylinder& c) -> OuterForm {
            if (!centered(c.center)) uncentered();
            return CylinderSet{c.j, c.radius};
          },
          [&pullback](const AffineImage& a) -> OuterForm {
            if (!centered(a.shift)) uncentered();
            pullback = a.s.inverse().matrix() * pullback;
            return reduce_outer(*a.inner, pullback);
          },
      },
      region.shape);
}

bool contains(const OuterForm& outer, const Vector& z, double slack) {
  return std::visit(
      Overloaded{
          [&](const CylinderSet& c) {
            const auto n = z.size() / 2;
            return std::hypot(z(c.j - 1), z(n + c.j - 1)) <= c.r * (1.0 + slack);
          },
          [&](const TorusSet& t) {
            const auto n = static_cast<long>(t.radii.size());
            for (long k = 0; k < n; ++k)
              if (std::hypot(z(k), z(n + k)) > t.radii[k] * (1.0 + slack)) return false;
            return true;
          },
          [&](const EllipsoidSet& e) { return 0.5 * z.dot(e.m * z) <= e.level * (1.0 + slack); },
      },
      outer);
}

// Largest |P_j C u| over |u| <= 1 and the maximizing point C u.
std::pair<double, Vector> plane_reach(const Matrix& c, int j) {
  const int n = static_cast<int>(c.rows() / 2);
  const Matrix pc = conjugate_plane(n, j) * c;
  Eigen::JacobiSVD<Matrix> svd(pc, Eigen::ComputeFullV);
  return {svd.singularValues()(0), c * svd.matrixV().col(0)};
}

InclusionResult decide_ellipsoidal(const EllipsoidalSet& in, const OuterForm& outer, const Matrix& back) {
  InclusionResult res;
  auto reject = [&](const Vector& z) {
    res.included = false;
    res.witness = PhasePoint(back * z);
    return res;
  };
  if (auto* cyl = std::get_if<CylinderSet>(&outer)) {
    auto [reach, arg] = plane_reach(in.c, cyl->j);
    if (reach > cyl->r * (1.0 + kSlack)) return reject(arg);
    res.included = true;
    return res;
  }
  if (auto* tor = std::get_if<TorusSet>(&outer)) {
    for (int j = 1; j <= static_cast<int>(tor->radii.size()); ++j) {
      auto [reach, arg] = plane_reach(in.c, j);
      if (reach > tor->radii[j - 1] * (1.0 + kSlack)) return reject(arg);
    }
    res.included = true;
    return res;
  }
  const auto& ell = std::get<EllipsoidSet>(outer);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(in.c.transpose() * ell.m * in.c);
  const auto last = eig.eigenvalues().size() - 1;
  if (0.5 * eig.eigenvalues()(last) > ell.level * (1.0 + kSlack))
    return reject(in.c * eig.eigenvectors().col(last));
  res.included = true;
  return res;
}

Vector torus_point(const TorusImage& t, std::span<const double> angles) {
  const auto n = static_cast<long>(t.radii.size());
  Vector z(2 * n);
  for (long k = 0; k < n; ++k) {
    z(k) = t.radii[k] * std::cos(angles[k]);
    z(n + k) = t.radii[k] * std::sin(angles[k]);
  }
  return t.a * z;
}

InclusionResult decide_torus(const TorusImage& in, const OuterForm& outer, const Matrix& back,
                             std::uint64_t seed, long samples) {
  InclusionResult res;
  const bool plain = in.plain && back.isIdentity(0.0);
  if (plain && !std::holds_alternative<EllipsoidSet>(outer)) {
    // The shadow of a polydisk on plane j is the disk of radius R_j.
    const auto n = static_cast<int>(in.radii.size());
    auto test = [&](int j, double r) {
      if (in.radii[j - 1] > r * (1.0 + kSlack)) {
        Vector z = Vector::Zero(2 * n);
        z(j - 1) = in.radii[j - 1];
        res.included = false;
        res.witness = PhasePoint(z);
        return false;
      }
      return true;
    };
    if (auto* cyl = std::get_if<CylinderSet>(&outer)) {
      res.included = test(cyl->j, cyl->r);
      return res;
    }
    const auto& tor = std::get<TorusSet>(outer);
    for (int j = 1; j <= n; ++j)
      if (!test(j, tor.radii[j - 1])) return res;
    res.included = true;
    return res;
  }

  // Outer sets are convex, so it suffices to test the extreme points of the
  // polydisk, i.e. the torus T^n(R_1..R_n).
  res.analytic = false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> th(in.radii.size());
  for (long s = 0; s < samples; ++s) {
    for (auto& a : th) a = angle(rng);
    const Vector z = torus_point(in, th);
    ++res.samples;
    if (!contains(outer, z, kSlack)) {
      res.included = false;
      res.witness = PhasePoint(back * z);
      return res;
    }
  }
  res.included = true;
  return res;
}

}  // namespace

int PhaseRegion::n() const {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.center.n(); },
                        [](const Ellipsoid& e) { return e.center.n(); },
                        [](const SolidTorus& t) { return static_cast<int>(t.radii.size()); },
                        [](const Cylinder& c) { return c.center.n(); },
                        [](const AffineImage& a) { return a.s.n(); },
                    },
                    shape);
}

PhaseRegion make_ball(PhasePoint center, double radius) {
  require_positive(radius, "ball radius");
  return {Ball{std::move(center), radius}};
}

PhaseRegion make_ellipsoid(PhasePoint center, Matrix hessian, double level) {
  require_positive(level, "ellipsoid level");
  require_positive_definite(hessian, "ellipsoid Hessian");
  require_same_n(center.n(), static_cast<int>(hessian.rows() / 2), "ellipsoid");
  Matrix sym = 0.5 * (hessian + hessian.transpose());
  return {Ellipsoid{std::move(center), std::move(sym), level}};
}

PhaseRegion make_solid_torus(std::vector<double> radii) {
  if (radii.empty()) fail(ErrorCode::Dimension, "solid torus needs at least one radius");
  for (double r : radii) require_positive(r, "solid torus radius");
  return {SolidTorus{std::move(radii)}};
}

PhaseRegion make_cylinder(int j, PhasePoint center, double radius) {
  require_positive(radius, "cylinder radius");
  if (j < 1 || j > center.n()) {
    std::ostringstream os;
    os << "cylinder pair index " << j << " outside 1.." << center.n();
    fail(ErrorCode::Dimension, os.str());
  }
  return {Cylinder{j, std::move(center), radius}};
}

PhaseRegion make_affine_image(SymplecticMatrix s, PhasePoint shift, PhaseRegion inner) {
  require_same_n(s.n(), inner.n(), "affine image");
  require_same_n(s.n(), shift.n(), "affine shift");
  return {AffineImage{std::move(s), std::move(shift), std::make_shared<const PhaseRegion>(std::move(inner))}};
}

CapacityValue capacity(const PhaseRegion& region) {
  const double value = std::visit(
      Overloaded{
          [](const Ball& b) { return kPi * b.radius * b.radius; },
          [](const Cylinder& c) { return kPi * c.radius * c.radius; },
          [](const Ellipsoid& e) {
            const auto radii = normal_radii(e.hessian, e.level);
            const double rmin = *std::min_element(radii.begin(), radii.end());
            return kPi * rmin * rmin;
          },
          [](const SolidTorus& t) {
            const double rmin = *std::min_element(t.radii.begin(), t.radii.end());
            return kPi * rmin * rmin;
          },
          // symplectic invariance: never recomputed geometrically
          [](const AffineImage& a) { return capacity(*a.inner).value; },
      },
      region.shape);
  return {value, true, value, value};
}

PhaseRegion scale_region(const PhaseRegion& region, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) fail(ErrorCode::Input, "scale factor must be nonzero and finite");
  const double mag = std::abs(lambda);
  return std::visit(
      Overloaded{
          [&](const Ball& b) { return make_ball(PhasePoint(lambda * b.center.coords()), mag * b.radius); },
          [&](const Ellipsoid& e) {
            return PhaseRegion{Ellipsoid{PhasePoint(lambda * e.center.coords()), e.hessian, lambda * lambda * e.level}};
          },
          [&](const SolidTorus& t) {
            std::vector<double> r = t.radii;
            for (auto& v : r) v *= mag;
            return PhaseRegion{SolidTorus{std::move(r)}};
          },
          [&](const Cylinder& c) {
            return PhaseRegion{Cylinder{c.j, PhasePoint(lambda * c.center.coords()), mag * c.radius}};
          },
          [&](const AffineImage& a) {
            return PhaseRegion{AffineImage{a.s, PhasePoint(lambda * a.shift.coords()),
                                           std::make_shared<const PhaseRegion>(scale_region(*a.inner, lambda))}};
          },
      },
      region.shape);
}

PhaseRegion map_region(const PhaseRegion& region, const SymplecticMatrix& s, const PhasePoint& shift) {
  require_same_n(region.n(), s.n(), "map_region");
  require_same_n(region.n(), shift.n(), "map_region shift");
  if (s.matrix().isIdentity(0.0) && centered(shift)) return region;
  if (const auto* a = std::get_if<AffineImage>(&region.shape)) {
    return {AffineImage{s * a->s, PhasePoint(s.apply(a->shift.coords()) + shift.coords()), a->inner}};
  }
  return {AffineImage{s, shift, std::make_shared<const PhaseRegion>(region)}};
}

CapacityValue sandwich_capacity(double inner_r, double outer_r, int j) {
  require_positive(inner_r, "inner ball radius");
  require_positive(outer_r, "outer cylinder radius");
  if (j < 1) fail(ErrorCode::Dimension, "cylinder pair index must be >= 1");
  if (inner_r > outer_r) {
    std::ostringstream os;
    os << "B(" << inner_r << ") cannot sit inside Z_" << j << "(" << outer_r << "): violates non-squeezing";
    fail(ErrorCode::InconsistentCertificate, os.str());
  }
  const double lo = kPi * inner_r * inner_r;
  const double hi = kPi * outer_r * outer_r;
  if (inner_r == outer_r) return {lo, true, lo, lo};
  return {lo, false, lo, hi};
}

InclusionResult inclusion_check(const PhaseRegion& inner, const PhaseRegion& outer, std::uint64_t seed,
                                long samples) {
  require_same_n(inner.n(), outer.n(), "inclusion_check");
  if (samples < 1) fail(ErrorCode::Input, "sample count must be positive");
  const int dim = 2 * inner.n();
  Matrix pullback = Matrix::Identity(dim, dim);
  const OuterForm out = reduce_outer(outer, pullback);
  const Matrix back = pullback.inverse();
  InnerForm in = reduce_inner(inner);

  if (auto* e = std::get_if<EllipsoidalSet>(&in)) {
    e->c = pullback * e->c;
    return decide_ellipsoidal(*e, out, back);
  }
  auto& t = std::get<TorusImage>(in);
  t.a = pullback * t.a;
  return decide_torus(t, out, back, seed, samples);
}

}  // namespace symcap

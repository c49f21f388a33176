#include "symcap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

// Work is split into a fixed number of chunks, each with its own derived seed,
// so the serial and parallel paths produce identical results.
constexpr int kChunks = 64;

long chunk_size(long samples, int c) { return samples / kChunks + (c < samples % kChunks ? 1 : 0); }

void check_args(const Matrix& s, double radius, int j, long samples) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() < 2) fail(ErrorCode::Dimension, "matrix must be 2n x 2n");
  const int n = static_cast<int>(s.rows() / 2);
  if (j < 1 || j > n) fail(ErrorCode::Dimension, "conjugate pair index out of range");
  if (!(radius > 0.0)) fail(ErrorCode::Input, "radius must be positive");
  if (samples < kChunks) fail(ErrorCode::Input, "need at least 64 samples");
}

std::vector<Point2> projection_chunk(const Matrix& s, double radius, int j, long count, std::uint64_t seed) {
  const int n = static_cast<int>(s.rows() / 2);
  const Vector a = s.row(j - 1).transpose();
  const Vector b = s.row(n + j - 1).transpose();
  std::mt19937_64 rng(seed);
  std::vector<Point2> pts;
  pts.reserve(count);
  for (long i = 0; i < count; ++i) {
    const Vector z = sample_sphere(2 * n, radius, rng);
    pts.push_back({a.dot(z), b.dot(z)});
  }
  return convex_hull(std::move(pts));
}

McEstimate merge_hulls(std::vector<std::vector<Point2>>& hulls, long samples) {
  std::vector<Point2> all;
  for (auto& h : hulls) all.insert(all.end(), h.begin(), h.end());
  const auto hull = convex_hull(std::move(all));
  return {polygon_area(hull), 0.0, samples};
}

// Sampling window in the plane: the ellipse { c + L u : |u| <= 1 }.
struct Window {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  Eigen::Matrix2d l = Eigen::Matrix2d::Identity();
  double area() const { return kPi * std::abs(l.determinant()); }
};

struct SliceCounts {
  long hits_wide = 0, hits_narrow = 0;
  long n_wide = 0, n_narrow = 0;
  // first and second moments of the in-plane coordinates of hits
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
};

// Samples the band around plane j over the window; half the points use
// half-width eps R, half eps R / 2.
SliceCounts slice_chunk(const Matrix& sinv, double radius, int j, const Window& win, double eps, long count,
                        std::uint64_t seed) {
  const int dim = static_cast<int>(sinv.rows());
  const int n = dim / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0), band(-1.0, 1.0);
  SliceCounts out;
  Vector w(dim);
  for (long i = 0; i < count; ++i) {
    const bool narrow = (i % 2) == 1;
    const double half = (narrow ? 0.5 : 1.0) * eps * radius;
    for (int k = 0; k < dim; ++k) w(k) = half * band(rng);
    const double rho = std::sqrt(unit(rng)), phi = 2.0 * kPi * unit(rng);
    const Eigen::Vector2d q = win.c + win.l * Eigen::Vector2d(rho * std::cos(phi), rho * std::sin(phi));
    w(j - 1) = q(0);
    w(n + j - 1) = q(1);
    const bool hit = (sinv * w).squaredNorm() <= radius * radius;
    if (narrow) {
      ++out.n_narrow;
      out.hits_narrow += hit;
    } else {
      ++out.n_wide;
      out.hits_wide += hit;
    }
    if (hit) {
      out.sx += q(0);
      out.sy += q(1);
      out.sxx += q(0) * q(0);
      out.sxy += q(0) * q(1);
      out.syy += q(1) * q(1);
    }
  }
  return out;
}

SliceCounts sum_counts(const std::vector<SliceCounts>& parts) {
  SliceCounts tot;
  for (const auto& p : parts) {
    tot.hits_wide += p.hits_wide;
    tot.hits_narrow += p.hits_narrow;
    tot.n_wide += p.n_wide;
    tot.n_narrow += p.n_narrow;
    tot.sx += p.sx;
    tot.sy += p.sy;
    tot.sxx += p.sxx;
    tot.sxy += p.sxy;
    tot.syy += p.syy;
  }
  return tot;
}

template <bool Parallel>
SliceCounts slice_pass(const Matrix& sinv, double radius, int j, const Window& win, double eps, long samples,
                       std::uint64_t seed) {
  std::vector<SliceCounts> parts(kChunks);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int c = 0; c < kChunks; ++c)
    parts[c] = slice_chunk(sinv, radius, j, win, eps, chunk_size(samples, c), derive_seed(seed, c));
  return sum_counts(parts);
}

template <bool Parallel>
McEstimate intersection_impl(const Matrix& s, double radius, int j, long samples, std::uint64_t seed,
                             double eps) {
  check_args(s, radius, j, samples);
  if (!(eps > 0.0)) fail(ErrorCode::Input, "band width must be positive");
  const int n = static_cast<int>(s.rows() / 2);
  const Matrix sinv = s.inverse();

  // |w_k| = |row_k(S) . z| <= R |row_k(S)| bounds the image of the ball, so
  // the disk through the corners of that box is a safe first window.
  const double hx = radius * s.row(j - 1).norm();
  const double hy = radius * s.row(n + j - 1).norm();
  Window win;
  win.l = std::hypot(hx, hy) * Eigen::Matrix2d::Identity();

  // Pilot pass: the hits of a uniformly filled ellipse have covariance
  // L L^T / 4, which fixes a tight window; the factor 1.2 leaves a margin.
  const long pilot = std::max<long>(samples / 20, kChunks);
  const auto probe = slice_pass<Parallel>(sinv, radius, j, win, eps, pilot, derive_seed(seed, 1000));
  const double hits = static_cast<double>(probe.hits_wide + probe.hits_narrow);
  if (hits >= 16) {
    const Eigen::Vector2d mean(probe.sx / hits, probe.sy / hits);
    Eigen::Matrix2d cov;
    cov << probe.sxx / hits - mean(0) * mean(0), probe.sxy / hits - mean(0) * mean(1),
        probe.sxy / hits - mean(0) * mean(1), probe.syy / hits - mean(1) * mean(1);
    Eigen::LLT<Eigen::Matrix2d> llt(4.0 * cov);
    if (llt.info() == Eigen::Success) {
      const Eigen::Matrix2d l = 1.2 * llt.matrixL().toDenseMatrix();
      if (kPi * std::abs(l.determinant()) < win.area()) {
        win.c = mean;
        win.l = l;
      }
    }
  }

  const long main = std::max<long>(samples - pilot, kChunks);
  const auto cnt = slice_pass<Parallel>(sinv, radius, j, win, eps, main, derive_seed(seed, 2000));
  const double fw = static_cast<double>(cnt.hits_wide) / cnt.n_wide;
  const double fn = static_cast<double>(cnt.hits_narrow) / cnt.n_narrow;
  const double aw = fw * win.area();
  const double an = fn * win.area();
  const double sw = win.area() * std::sqrt(fw * (1 - fw) / cnt.n_wide);
  const double sn = win.area() * std::sqrt(fn * (1 - fn) / cnt.n_narrow);
  // A(eps) = A0 - c eps^2 + O(eps^4)
  return {(4.0 * an - aw) / 3.0, std::sqrt(16.0 * sn * sn + sw * sw) / 3.0, pilot + main};
}

template <bool Parallel>
McEstimate projection_impl(const Matrix& s, double radius, int j, long samples, std::uint64_t seed) {
  check_args(s, radius, j, samples);
  std::vector<std::vector<Point2>> hulls(kChunks);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int c = 0; c < kChunks; ++c)
    hulls[c] = projection_chunk(s, radius, j, chunk_size(samples, c), derive_seed(seed, c));
  return merge_hulls(hulls, samples);
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
              return a.x == b.x && a.y == b.y;
            }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(std::span<const Point2> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(twice);
}

McEstimate mc_projection_area(const Matrix& s, double radius, int j, long samples, std::uint64_t seed) {
  return projection_impl<true>(s, radius, j, samples, seed);
}

McEstimate mc_projection_area_serial(const Matrix& s, double radius, int j, long samples, std::uint64_t seed) {
  return projection_impl<false>(s, radius, j, samples, seed);
}

McEstimate mc_intersection_area(const Matrix& s, double radius, int j, long samples, std::uint64_t seed,
                                double eps) {
  return intersection_impl<true>(s, radius, j, samples, seed, eps);
}

McEstimate mc_intersection_area_serial(const Matrix& s, double radius, int j, long samples,
                                       std::uint64_t seed, double eps) {
  return intersection_impl<false>(s, radius, j, samples, seed, eps);
}

}  // namespace symcap

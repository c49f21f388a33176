#include "symcap/maslov.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

using Complex = std::complex<double>;

constexpr double kClosureTol = 1e-8;
constexpr int kMaxDepth = 20;
constexpr double kRefineAngle = kPi / 2.0;
// An eigen-angle this close to pi means the step could have turned either way.
constexpr double kAmbiguity = 1e-6;

Matrix stacked(const Matrix& x, const Matrix& p) {
  Matrix f(2 * x.rows(), x.cols());
  f << x, p;
  return f;
}

Matrix orthonormal_basis(const LagrangianFrame& f) {
  Eigen::HouseholderQR<Matrix> qr(stacked(f.x(), f.p()));
  return qr.householderQ() * Matrix::Identity(2 * f.n(), f.n());
}

struct Step {
  double phase;
  int depth;
};

// Phase of det w gained from plane Ua Ua^T to plane Ub Ub^T along the U(n)
// geodesic, bisecting until every piece turns by less than pi/2.
Step step_phase(const CMatrix& ua, const CMatrix& ub, int depth) {
  const CMatrix wb = ub * ub.transpose();
  const CMatrix v = ua.adjoint() * wb * ua.conjugate();
  Eigen::ComplexSchur<CMatrix> schur(v);
  if (schur.info() != Eigen::Success) fail(ErrorCode::Numerical, "complex Schur did not converge");
  const auto lambda = schur.matrixT().diagonal();

  double max_angle = 0.0, sum_angle = 0.0;
  Complex det(1.0, 0.0);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double th = std::arg(lambda(i));
    max_angle = std::max(max_angle, std::abs(th));
    sum_angle += th;
    det *= lambda(i) / std::abs(lambda(i));
  }
  if (max_angle > kPi - kAmbiguity) {
    fail(ErrorCode::SamplingTooCoarse,
         "consecutive planes are antipodal along some direction; the step direction is ambiguous");
  }
  if (max_angle < kRefineAngle && std::abs(sum_angle) < kRefineAngle) return {std::arg(det), depth};
  if (depth >= kMaxDepth) fail(ErrorCode::SamplingTooCoarse, "refinement depth exhausted");

  // V^{1/4} on the principal branch; U_mid U_mid^T = Ua V^{1/2} Ua^T.
  CMatrix quarter = CMatrix::Zero(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) quarter(i, i) = std::polar(1.0, std::arg(lambda(i)) / 4.0);
  const CMatrix mid = ua * schur.matrixU() * quarter * schur.matrixU().adjoint();

  const auto left = step_phase(ua, mid, depth + 1);
  const auto right = step_phase(mid, ub, depth + 1);
  return {left.phase + right.phase, std::max(left.depth, right.depth)};
}

}  // namespace

LagrangianFrame::LagrangianFrame(Matrix x, Matrix p) : x_(std::move(x)), p_(std::move(p)) {
  if (x_.rows() < 1 || x_.rows() != x_.cols() || p_.rows() != x_.rows() || p_.cols() != x_.cols())
    fail(ErrorCode::Dimension, "Lagrangian frame blocks must both be n x n");
  if (!x_.allFinite() || !p_.allFinite()) fail(ErrorCode::Input, "Lagrangian frame has non-finite entries");

  Eigen::JacobiSVD<Matrix> svd(stacked(x_, p_));
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    std::ostringstream os;
    os << "frame is rank deficient (singular values " << sv(0) << " .. " << sv(sv.size() - 1) << ")";
    fail(ErrorCode::Validation, os.str());
  }
  const double iso = inf_norm(x_.transpose() * p_ - p_.transpose() * x_);
  const double scale = inf_norm(x_) + inf_norm(p_);
  if (iso > 1e-10 * scale * scale) {
    std::ostringstream os;
    os << "plane is not Lagrangian: ||X^T P - P^T X||_inf = " << iso;
    fail(ErrorCode::Validation, os.str());
  }
}

CMatrix LagrangianFrame::unitary() const {
  const Matrix gram = x_.transpose() * x_ + p_.transpose() * p_;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gram + gram.transpose()));
  const Matrix g = eig.operatorInverseSqrt();
  CMatrix z(n(), n());
  z.real() = x_ * g;
  z.imag() = p_ * g;
  return z;
}

CMatrix souriau_map(const LagrangianFrame& frame) {
  CMatrix plus(frame.n(), frame.n()), minus(frame.n(), frame.n());
  plus.real() = frame.x();
  plus.imag() = frame.p();
  minus = plus.conjugate();
  Eigen::FullPivLU<CMatrix> lu(minus);
  if (!lu.isInvertible()) fail(ErrorCode::Validation, "X - iP is singular; frame is not Lagrangian");
  // w = plus * minus^{-1}  <=>  w^T = minus^{-T} plus^T
  const CMatrix wt = minus.transpose().fullPivLu().solve(plus.transpose());
  return wt.transpose();
}

double plane_distance(const LagrangianFrame& a, const LagrangianFrame& b) {
  if (a.n() != b.n()) fail(ErrorCode::Dimension, "frames of different dimension");
  const Matrix qa = orthonormal_basis(a);
  const Matrix qb = orthonormal_basis(b);
  const Matrix resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Matrix> svd(resid);
  return svd.singularValues()(0);
}

LagrangianLoop::LagrangianLoop(std::vector<LagrangianFrame> frames, std::vector<double> params, bool closed)
    : frames_(std::move(frames)), params_(std::move(params)), closed_(closed) {
  if (frames_.size() < 2) fail(ErrorCode::Input, "a loop needs at least two frames");
  if (params_.size() != frames_.size()) fail(ErrorCode::Input, "one parameter per frame is required");
  for (const auto& f : frames_)
    if (f.n() != frames_.front().n()) fail(ErrorCode::Dimension, "frames of different dimension in one loop");
  for (std::size_t k = 1; k < params_.size(); ++k)
    if (!(params_[k] > params_[k - 1])) fail(ErrorCode::Input, "loop parameters must be strictly increasing");
  closure_gap_ = plane_distance(frames_.front(), frames_.back());
  if (closed_ && closure_gap_ > kClosureTol) {
    std::ostringstream os;
    os << "loop endpoints span different planes (principal-angle gap " << closure_gap_ << ")";
    fail(ErrorCode::Closure, os.str());
  }
}

LagrangianLoop LagrangianLoop::reversed() const {
  std::vector<LagrangianFrame> f(frames_.rbegin(), frames_.rend());
  std::vector<double> t;
  t.reserve(params_.size());
  for (auto it = params_.rbegin(); it != params_.rend(); ++it) t.push_back(-*it);
  return LagrangianLoop(std::move(f), std::move(t), closed_);
}

LagrangianLoop LagrangianLoop::repeated(int k) const {
  if (k < 1) fail(ErrorCode::Input, "repetition count must be >= 1");
  const double period = params_.back() - params_.front();
  std::vector<LagrangianFrame> f(frames_);
  std::vector<double> t(params_);
  for (int r = 1; r < k; ++r)
    for (std::size_t i = 1; i < frames_.size(); ++i) {
      f.push_back(frames_[i]);
      t.push_back(params_[i] + r * period);
    }
  return LagrangianLoop(std::move(f), std::move(t), closed_);
}

MaslovResult maslov_index(const LagrangianLoop& loop) {
  if (!loop.closed()) fail(ErrorCode::Closure, "the Maslov index is defined for closed loops only");
  const auto& frames = loop.frames();
  MaslovResult res;
  double total = 0.0;
  CMatrix prev = frames.front().unitary();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    CMatrix next = frames[k].unitary();
    const auto step = step_phase(prev, next, 0);
    total += step.phase;
    res.refinement_depth = std::max(res.refinement_depth, step.depth);
    prev = std::move(next);
  }
  res.raw_winding = total / (2.0 * kPi);
  res.index = static_cast<int>(std::lround(res.raw_winding));
  if (std::abs(res.raw_winding - res.index) >= 0.1) {
    std::ostringstream os;
    os << "winding " << res.raw_winding << " is not within 0.1 of an integer";
    fail(ErrorCode::Numerical, os.str());
  }
  return res;
}

LagrangianLoop torus_cycle_loop(const std::vector<double>& radii, int j, int samples) {
  const int n = static_cast<int>(radii.size());
  if (n < 1) fail(ErrorCode::Dimension, "torus needs at least one radius");
  if (j < 1 || j > n) fail(ErrorCode::Dimension, "basic cycle index out of range");
  if (samples < 16) fail(ErrorCode::Input, "torus_cycle_loop needs samples >= 16");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::Input, "torus radii must be positive");

  std::vector<LagrangianFrame> frames;
  std::vector<double> params;
  frames.reserve(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    const double t = 2.0 * kPi * k / samples;
    Matrix x = Matrix::Zero(n, n), p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const double phi = (i == j - 1) ? t : 0.0;
      x(i, i) = -radii[i] * std::sin(phi);
      p(i, i) = radii[i] * std::cos(phi);
    }
    frames.emplace_back(std::move(x), std::move(p));
    params.push_back(t);
  }
  return LagrangianLoop(std::move(frames), std::move(params), true);
}

LagrangianLoop transport_loop(const LagrangianLoop& loop, const SymplecticMatrix& s) {
  const int n = loop.n();
  if (s.n() != n) fail(ErrorCode::Dimension, "transport map and loop dimensions differ");
  std::vector<LagrangianFrame> frames;
  frames.reserve(loop.frames().size());
  for (const auto& f : loop.frames()) {
    const Matrix img = s.matrix() * stacked(f.x(), f.p());
    frames.emplace_back(img.topRows(n), img.bottomRows(n));
  }
  return LagrangianLoop(std::move(frames), loop.params(), loop.closed());
}

}  // namespace symcap

#include "symcap/squeeze.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

// det of the Gram matrix of (a, b), |a|^2 |b|^2 - (a.b)^2, summed as squared
// 2x2 minors (Lagrange identity) so no cancellation occurs.
double gram_det(const Vector& a, const Vector& b) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k)
    for (Eigen::Index l = k + 1; l < a.size(); ++l) {
      const double minor = a(k) * b(l) - a(l) * b(k);
      sum += minor * minor;
    }
  return sum;
}

void check_shadow_args(const SymplecticMatrix& s, double radius, int j) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorCode::Input, "ball radius must be positive");
  if (j < 1 || j > s.n()) {
    std::ostringstream os;
    os << "conjugate pair index " << j << " outside 1.." << s.n();
    fail(ErrorCode::Dimension, os.str());
  }
}

struct TrialOutcome {
  double min_proj = INFINITY;
  int min_proj_j = 0;
  double max_inter = -INFINITY;
  double min_inter = INFINITY;
  long equalities = 0;
  long below = 0;
  bool symplectic = true;
  std::vector<NonsqueezeFailure> failures;
};

TrialOutcome run_trial(const NonsqueezeConfig& cfg, long trial) {
  TrialOutcome out;
  const auto s = random_symplectic(cfg.n, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)), cfg.spread);
  out.symplectic = is_symplectic(s.matrix(), cfg.tol).symplectic;

  Vector shift = Vector::Zero(2 * cfg.n);
  if (cfg.translate) {
    std::mt19937_64 rng(derive_seed(~cfg.seed, static_cast<std::uint64_t>(trial)));
    std::normal_distribution<double> gauss(0.0, 10.0 * cfg.radius);
    for (auto& v : shift) v = gauss(rng);
  }

  for (int j = 1; j <= cfg.n; ++j) {
    const auto rep = shadow_report(s, shift, cfg.radius, j);
    if (rep.projection_ratio < out.min_proj) {
      out.min_proj = rep.projection_ratio;
      out.min_proj_j = j;
    }
    out.max_inter = std::max(out.max_inter, rep.intersection_ratio);
    out.min_inter = std::min(out.min_inter, rep.intersection_ratio);
    if (std::abs(rep.intersection_ratio - 1.0) <= cfg.tol) ++out.equalities;
    if (rep.intersection_ratio < 1.0 - cfg.tol) ++out.below;

    const bool bad = rep.projection_ratio < 1.0 - cfg.tol || rep.intersection_ratio > 1.0 + cfg.tol ||
                     rep.intersection_area > rep.projection_area * (1.0 + cfg.tol) || !out.symplectic;
    if (bad) out.failures.push_back({trial, j, rep.projection_ratio, rep.intersection_ratio, out.symplectic});
  }
  return out;
}

NonsqueezeReport merge(const NonsqueezeConfig& cfg, const std::vector<TrialOutcome>& outcomes) {
  NonsqueezeReport rep;
  rep.trials = cfg.trials;
  rep.min_projection_ratio = INFINITY;
  rep.max_intersection_ratio = -INFINITY;
  rep.min_intersection_ratio = INFINITY;
  for (long t = 0; t < cfg.trials; ++t) {
    const auto& o = outcomes[t];
    if (o.min_proj < rep.min_projection_ratio) {
      rep.min_projection_ratio = o.min_proj;
      rep.worst_trial = t;
      rep.worst_j = o.min_proj_j;
    }
    rep.max_intersection_ratio = std::max(rep.max_intersection_ratio, o.max_inter);
    rep.min_intersection_ratio = std::min(rep.min_intersection_ratio, o.min_inter);
    rep.intersection_equalities += o.equalities;
    rep.intersection_below_bound += o.below;
    rep.violations += static_cast<long>(o.failures.size());
    for (const auto& f : o.failures)
      if (rep.failures.size() < 16) rep.failures.push_back(f);
  }
  rep.worst_case_matrix =
      random_symplectic(cfg.n, derive_seed(cfg.seed, static_cast<std::uint64_t>(rep.worst_trial)), cfg.spread).matrix();
  return rep;
}

void check_config(const NonsqueezeConfig& cfg) {
  if (cfg.n < 1) fail(ErrorCode::Input, "n must be >= 1");
  if (cfg.trials < 1) fail(ErrorCode::Input, "trials must be >= 1");
  if (!(cfg.radius > 0.0)) fail(ErrorCode::Input, "radius must be positive");
  if (!(cfg.tol >= 0.0)) fail(ErrorCode::Input, "tolerance must be non-negative");
}

}  // namespace

double projection_area(const SymplecticMatrix& s, double radius, int j) {
  check_shadow_args(s, radius, j);
  const int n = s.n();
  const Vector a = s.matrix().row(j - 1).transpose();
  const Vector b = s.matrix().row(n + j - 1).transpose();
  return kPi * radius * radius * std::sqrt(gram_det(a, b));
}

double intersection_area(const SymplecticMatrix& s, double radius, int j) {
  check_shadow_args(s, radius, j);
  const int n = s.n();
  // (S S^T)^{-1} = S^{-T} S^{-1}; its (j, n+j) block is the Gram matrix of
  // rows j, n+j of S^{-T} = -J S J.
  const Matrix jm = standard_form(n);
  const Matrix inv_t = -jm * s.matrix() * jm;
  const Vector a = inv_t.row(j - 1).transpose();
  const Vector b = inv_t.row(n + j - 1).transpose();
  return kPi * radius * radius / std::sqrt(gram_det(a, b));
}

ShadowReport shadow_report(const SymplecticMatrix& s, const Vector& shift, double radius, int j) {
  check_shadow_args(s, radius, j);
  if (shift.size() != 2 * s.n()) fail(ErrorCode::Dimension, "shift dimension mismatch");
  ShadowReport rep;
  rep.j = j;
  rep.projection_area = projection_area(s, radius, j);
  rep.intersection_area = intersection_area(s, radius, j);
  const double disk = kPi * radius * radius;
  rep.projection_ratio = rep.projection_area / disk;
  rep.intersection_ratio = rep.intersection_area / disk;
  rep.shadow_center = {shift(j - 1), shift(s.n() + j - 1)};
  return rep;
}

NonsqueezeReport nonsqueeze_verify_serial(const NonsqueezeConfig& config) {
  check_config(config);
  std::vector<TrialOutcome> outcomes(config.trials);
  for (long t = 0; t < config.trials; ++t) {
    try {
      outcomes[t] = run_trial(config, t);
    } catch (const std::exception& e) {
      fail(ErrorCode::Numerical, "trial " + std::to_string(t) + ": " + e.what());
    }
  }
  return merge(config, outcomes);
}

NonsqueezeReport nonsqueeze_verify(const NonsqueezeConfig& config) {
  check_config(config);
  std::vector<TrialOutcome> outcomes(config.trials);
  std::vector<std::string> errors(config.trials);
#pragma omp parallel for schedule(dynamic, 64)
  for (long t = 0; t < config.trials; ++t) {
    try {
      outcomes[t] = run_trial(config, t);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  }
  for (long t = 0; t < config.trials; ++t)
    if (!errors[t].empty()) fail(ErrorCode::Numerical, "trial " + std::to_string(t) + ": " + errors[t]);
  return merge(config, outcomes);
}

}  // namespace symcap

#include "certreg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "certreg/bounds.hpp"
#include "certreg/error.hpp"

namespace certreg {

void refresh_norms(ApproxSolution& s) {
  double w2 = 0.0;
  for (double v : s.weights) w2 += v * v;
  double g2 = 0.0;
  for (double v : s.subgradient) g2 += v * v;
  s.norm_w = std::sqrt(w2);
  s.norm_g = std::sqrt(g2);
}

bool gap_target_met(const PointBounds& pb, double epsilon, double fraction) {
  return static_cast<double>(pb.undecided()) <= fraction * epsilon * static_cast<double>(pb.total);
}

namespace {

double dense_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double a, const SparseVector& x, std::vector<double>& y) {
  for (const auto& f : x) {
    if (f.index <= y.size()) y[f.index - 1] += a * f.value;
  }
}

// Tracks the current iterate and decides when to stop.
class Monitor {
 public:
  Monitor(const Dataset& validation, const SolverConfig& config, const SolveMode& mode)
      : validation_(validation), config_(config), mode_(mode) {}

  bool exact_met(const ObjectiveState& st) const {
    return st.subgradient_norm <= config_.exact_tolerance * (norm_of(st.weights) + 1.0);
  }

  // Returns true when the caller should stop with `st` as the answer.
  bool done(const ObjectiveState& st, int iteration) {
    if (mode_.kind == SolveMode::Kind::exact) return exact_met(st);
    if (iteration % std::max(1, config_.gap_check_interval) != 0 && !exact_met(st)) return false;
    const auto pb = point_bounds(st.weights, st.subgradient, norm_of(st.weights), st.subgradient_norm,
                                 validation_);
    return gap_target_met(pb, mode_.epsilon, config_.gap_target_fraction);
  }

  static double norm_of(std::span<const double> v) { return std::sqrt(dense_dot(v, v)); }

 private:
  const Dataset& validation_;
  const SolverConfig& config_;
  const SolveMode& mode_;
};

ApproxSolution finish(ObjectiveState st, const Dataset& validation, const SolverConfig& config,
                      bool converged, int iterations, std::vector<double> trace) {
  ApproxSolution s;
  s.c = st.c;
  s.weights = std::move(st.weights);
  s.subgradient = std::move(st.subgradient);
  s.objective = st.objective_value;
  refresh_norms(s);
  s.point_bounds = point_bounds(s, validation);
  s.is_exact = s.norm_g <= config.exact_tolerance * (s.norm_w + 1.0);
  s.converged = converged;
  s.iterations = iterations;
  s.objective_trace = std::move(trace);
  return s;
}

// Truncated Newton with a conjugate-gradient inner solve and Armijo
// backtracking. For huber_hinge the Hessian is the generalized one.
ApproxSolution newton_cg(const Dataset& train, const Dataset& validation, const LossKind& kind,
                         double c, const SolverConfig& config, const SolveMode& mode,
                         std::vector<double> w) {
  const std::size_t d = w.size();
  Monitor monitor(validation, config, mode);
  auto st = objective_and_subgradient(kind, train, w, c);
  std::vector<double> trace;
  std::vector<double> curvature(train.size());
  std::vector<double> dir(d), r(d), p(d), hp(d), trial(d);
  std::vector<double> margin(train.size()), dmargin(train.size());

  for (int it = 0;; ++it) {
    if (monitor.done(st, it)) return finish(std::move(st), validation, config, true, it, std::move(trace));
    if (it >= config.max_iterations) break;

    for (std::size_t i = 0; i < train.size(); ++i)
      curvature[i] = loss_curvature(kind, train[i].label, dot(train[i].features, st.weights));
    auto hess_vec = [&](const std::vector<double>& v, std::vector<double>& out) {
      out = v;
      for (std::size_t i = 0; i < train.size(); ++i) {
        if (curvature[i] == 0.0) continue;
        axpy(c * curvature[i] * dot(train[i].features, v), train[i].features, out);
      }
    };

    // CG on H dir = -g, stopped at a relative residual of min(0.5, sqrt|g|).
    const double gnorm = st.subgradient_norm;
    const double cg_tol = std::min(0.5, std::sqrt(gnorm)) * gnorm;
    std::fill(dir.begin(), dir.end(), 0.0);
    for (std::size_t j = 0; j < d; ++j) r[j] = -st.subgradient[j];
    p = r;
    double rr = dense_dot(r, r);
    for (int k = 0; k < config.cg_max_iterations && std::sqrt(rr) > cg_tol; ++k) {
      hess_vec(p, hp);
      const double php = dense_dot(p, hp);
      if (!(php > 0.0)) break;
      const double a = rr / php;
      for (std::size_t j = 0; j < d; ++j) {
        dir[j] += a * p[j];
        r[j] -= a * hp[j];
      }
      const double rr_new = dense_dot(r, r);
      for (std::size_t j = 0; j < d; ++j) p[j] = r[j] + (rr_new / rr) * p[j];
      rr = rr_new;
    }
    double slope = dense_dot(st.subgradient, dir);
    if (!(slope < 0.0)) {
      for (std::size_t j = 0; j < d; ++j) dir[j] = -st.subgradient[j];
      slope = -gnorm * gnorm;
    }

    // Armijo on f(w + t dir) - f(w), evaluated term by term so that the
    // decrease stays resolvable when it is far below the ulp of f itself.
    for (std::size_t i = 0; i < train.size(); ++i) {
      margin[i] = dot(train[i].features, st.weights);
      dmargin[i] = dot(train[i].features, dir);
    }
    const double wd = dense_dot(st.weights, dir);
    const double dd = dense_dot(dir, dir);
    auto decrease = [&](double t) {
      double loss = 0.0;
      for (std::size_t i = 0; i < train.size(); ++i)
        loss += loss_difference(kind, train[i].label, margin[i], margin[i] + t * dmargin[i]);
      return t * wd + 0.5 * t * t * dd + c * loss;
    };
    double step = 1.0;
    std::optional<double> delta;
    for (int b = 0; b < config.max_backtracks; ++b, step *= config.backtrack_factor) {
      const double df = decrease(step);
      if (!std::isfinite(df)) throw SolverError("non-finite objective during line search");
      if (df < 0.0 && df <= config.armijo_sigma * step * slope) {
        delta = df;
        break;
      }
    }
    if (!delta) break;
    for (std::size_t j = 0; j < d; ++j) trial[j] = st.weights[j] + step * dir[j];
    const double tracked = (trace.empty() ? st.objective_value : trace.back()) + *delta;
    st = objective_and_subgradient(kind, train, trial, c);
    trace.push_back(tracked);
  }
  const int iterations = static_cast<int>(trace.size());
  return finish(std::move(st), validation, config, false, iterations, std::move(trace));
}

// Dual coordinate descent for the hinge loss (no bias term). Each pass over
// the data is one iteration; a pass is accepted only if the primal objective
// does not increase, so the reported trace is monotone.
ApproxSolution hinge_dual_cd(const Dataset& train, const Dataset& validation, const LossKind& kind,
                             double c, const SolverConfig& config, const SolveMode& mode,
                             const std::vector<double>& warm) {
  const std::size_t d = warm.size();
  const std::size_t n = train.size();
  Monitor monitor(validation, config, mode);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d, 0.0);
  std::vector<double> qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    qii[i] = squared_norm(train[i].features);
    if (train[i].label * dot(train[i].features, warm) < 1.0) alpha[i] = c;
    if (alpha[i] != 0.0) axpy(alpha[i] * train[i].label, train[i].features, w);
  }

  auto best = objective_and_subgradient(kind, train, w, c);
  std::vector<double> trace;
  int accepted_iterations = 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(0x5eed);

  for (int it = 0;; ++it) {
    if (monitor.done(best, accepted_iterations))
      return finish(std::move(best), validation, config, true, it, std::move(trace));
    if (it >= config.max_iterations) break;

    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (qii[i] == 0.0) continue;
      const int y = train[i].label;
      const double grad = y * dot(train[i].features, w) - 1.0;
      double pg = grad;
      if (alpha[i] == 0.0) pg = std::min(grad, 0.0);
      else if (alpha[i] == c) pg = std::max(grad, 0.0);
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - grad / qii[i], 0.0, c);
      axpy((alpha[i] - old) * y, train[i].features, w);
    }
    auto cur = objective_and_subgradient(kind, train, w, c);
    if (cur.objective_value <= best.objective_value) {
      best = std::move(cur);
      trace.push_back(best.objective_value);
      ++accepted_iterations;
    }
  }
  return finish(std::move(best), validation, config, false, config.max_iterations, std::move(trace));
}

}  // namespace

ApproxSolution solve(const Dataset& train, const Dataset& validation, const LossKind& kind, double c,
                     const SolverConfig& config, const SolveMode& mode,
                     std::optional<std::span<const double>> warm_start) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("regularization parameter must be positive");
  if (config.max_iterations < 1) throw ConfigError("max_iterations must be positive");
  if (mode.kind == SolveMode::Kind::approximate && !(mode.epsilon >= 0.0))
    throw ConfigError("approximate mode needs epsilon >= 0");
  const std::size_t d = std::max(train.dimension(), validation.dimension());
  std::vector<double> w(d, 0.0);
  if (warm_start) {
    if (warm_start->size() != d) throw ConfigError("warm start has the wrong dimension");
    std::copy(warm_start->begin(), warm_start->end(), w.begin());
  }
  if (kind.variant == LossKind::Variant::hinge)
    return hinge_dual_cd(train, validation, kind, c, config, mode, w);
  return newton_cg(train, validation, kind, c, config, mode, std::move(w));
}

}  // namespace certreg

#include "certreg/bounds.hpp"

#include <cmath>
#include <limits>

#include "certreg/error.hpp"

namespace certreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// c_tilde * num / den, with den <= 0 mapped to `fallback` (0 or +inf).
double ratio_point(double c_tilde, double num, double den, double fallback) {
  return den > 0.0 ? c_tilde * (num / den) : fallback;
}

// Rounding in the ratios must not push C~ itself out of an interval that
// is known to hold at C~.
GuaranteeInterval make_interval(double lo, double hi, double c_tilde, GuaranteeKind kind,
                                std::size_t instance) {
  if (kind == GuaranteeKind::misclassified) {
    if (!(lo < c_tilde)) lo = std::nextafter(c_tilde, 0.0);
    if (!(hi > c_tilde)) hi = std::nextafter(c_tilde, kInf);
  } else {
    if (lo > c_tilde) lo = c_tilde;
    if (hi < c_tilde) hi = c_tilde;
  }
  return {lo, hi, kind, instance};
}

bool wrong_at_tilde(const BoundCoefficients& k, int label) {
  return label > 0 ? k.score() + k.delta < 0.0 : k.score() - k.gamma > 0.0;
}

bool right_at_tilde(const BoundCoefficients& k, int label) {
  return label > 0 ? k.score() - k.gamma >= 0.0 : k.score() + k.delta <= 0.0;
}

}  // namespace

BoundCoefficients coefficients(std::span<const double> w, std::span<const double> g, double norm_w,
                               double norm_g, const SparseVector& x) {
  const double xn = norm(x);
  const double wx = dot(x, w);
  const double gx = dot(x, g);
  return {0.5 * (norm_w * xn + wx), 0.5 * (norm_w * xn - wx), 0.5 * (norm_g * xn + gx),
          0.5 * (norm_g * xn - gx)};
}

BoundCoefficients coefficients(const ApproxSolution& solution, const SparseVector& x) {
  return coefficients(solution.weights, solution.subgradient, solution.norm_w, solution.norm_g, x);
}

ScoreBoundLine score_bound_line(const BoundCoefficients& k, double c_tilde) {
  ScoreBoundLine line;
  line.c_tilde = c_tilde;
  line.lb_right = {k.alpha, -(k.beta + k.gamma) / c_tilde};
  line.ub_right = {-k.beta, (k.alpha + k.delta) / c_tilde};
  line.lb_left = {-k.beta, (k.alpha - k.gamma) / c_tilde};
  line.ub_left = {k.alpha, -(k.beta - k.delta) / c_tilde};
  return line;
}

ScoreBoundLine score_bound_line(const ApproxSolution& solution, const SparseVector& x) {
  return score_bound_line(coefficients(solution, x), solution.c);
}

ScoreBounds score_bounds(const ApproxSolution& solution, const SparseVector& x, double c) {
  if (!(c > 0.0)) throw ConfigError("score bounds need C > 0");
  const auto k = coefficients(solution, x);
  if (c == solution.c) return {k.score() - k.gamma, k.score() + k.delta};
  const auto line = score_bound_line(k, solution.c);
  return {line.lb(c), line.ub(c)};
}

std::optional<GuaranteeInterval> misclassified_interval(const BoundCoefficients& k, int label,
                                                        double c_tilde, std::size_t instance) {
  if (!wrong_at_tilde(k, label)) return std::nullopt;
  double lo = 0.0;
  double hi = kInf;
  if (label > 0) {
    // ub < 0:  right of C~ while t < beta / (alpha + delta),
    //          left of C~ while t > alpha / (beta - delta)
    hi = ratio_point(c_tilde, k.beta, k.alpha + k.delta, kInf);
    lo = ratio_point(c_tilde, k.alpha, k.beta - k.delta, 0.0);
  } else {
    // lb > 0:  right while t < alpha / (beta + gamma),
    //          left while t > beta / (alpha - gamma)
    hi = ratio_point(c_tilde, k.alpha, k.beta + k.gamma, kInf);
    lo = ratio_point(c_tilde, k.beta, k.alpha - k.gamma, 0.0);
  }
  return make_interval(lo, hi, c_tilde, GuaranteeKind::misclassified, instance);
}

std::optional<GuaranteeInterval> correct_interval(const BoundCoefficients& k, int label,
                                                  double c_tilde, std::size_t instance) {
  if (!right_at_tilde(k, label)) return std::nullopt;
  double lo = 0.0;
  double hi = kInf;
  if (label > 0) {
    // lb >= 0
    hi = ratio_point(c_tilde, k.alpha, k.beta + k.gamma, kInf);
    lo = ratio_point(c_tilde, k.beta, k.alpha - k.gamma, 0.0);
  } else {
    // ub <= 0
    hi = ratio_point(c_tilde, k.beta, k.alpha + k.delta, kInf);
    lo = ratio_point(c_tilde, k.alpha, k.beta - k.delta, 0.0);
  }
  return make_interval(lo, hi, c_tilde, GuaranteeKind::correct, instance);
}

std::optional<GuaranteeInterval> misclassified_interval(const ApproxSolution& solution,
                                                        const LabeledInstance& x, std::size_t instance) {
  return misclassified_interval(coefficients(solution, x.features), x.label, solution.c, instance);
}

std::optional<GuaranteeInterval> correct_interval(const ApproxSolution& solution,
                                                  const LabeledInstance& x, std::size_t instance) {
  return correct_interval(coefficients(solution, x.features), x.label, solution.c, instance);
}

std::optional<GuaranteeInterval> clip(const GuaranteeInterval& iv, double c_lo, double c_hi) {
  GuaranteeInterval out = iv;
  if (c_lo > out.lo) out.lo = c_lo;
  if (c_hi < out.hi) out.hi = c_hi;
  // Clipped ends keep the interval's own openness.
  if (out.closed() ? out.lo > out.hi : out.lo >= out.hi) return std::nullopt;
  return out;
}

SolutionIntervals guarantee_intervals(const ApproxSolution& solution, const Dataset& validation) {
  SolutionIntervals out;
  for (std::size_t i = 0; i < validation.size(); ++i) {
    const auto k = coefficients(solution, validation[i].features);
    if (auto iv = misclassified_interval(k, validation[i].label, solution.c, i)) out.misclassified.push_back(*iv);
    if (auto iv = correct_interval(k, validation[i].label, solution.c, i)) out.correct.push_back(*iv);
  }
  return out;
}

PointBounds point_bounds(std::span<const double> w, std::span<const double> g, double norm_w,
                         double norm_g, const Dataset& validation) {
  PointBounds pb;
  pb.total = validation.size();
  for (const auto& inst : validation) {
    const auto k = coefficients(w, g, norm_w, norm_g, inst.features);
    if (wrong_at_tilde(k, inst.label)) ++pb.guaranteed_wrong;
    else if (right_at_tilde(k, inst.label)) ++pb.guaranteed_right;
  }
  return pb;
}

PointBounds point_bounds(const ApproxSolution& solution, const Dataset& validation) {
  return point_bounds(solution.weights, solution.subgradient, solution.norm_w, solution.norm_g,
                      validation);
}

namespace {

StaircaseBound staircase_of(const std::vector<GuaranteeInterval>& ivs, std::size_t total,
                            StaircaseBound::Direction direction) {
  std::vector<StaircaseBound::Interval> raw;
  raw.reserve(ivs.size());
  for (const auto& iv : ivs) raw.push_back(iv.as_staircase_interval());
  return StaircaseBound::from_intervals(raw, total, direction);
}

}  // namespace

StaircaseBound lower_bound_staircase(const ApproxSolution& solution, const Dataset& validation) {
  std::vector<GuaranteeInterval> ivs;
  for (std::size_t i = 0; i < validation.size(); ++i) {
    if (auto iv = misclassified_interval(solution, validation[i], i)) ivs.push_back(*iv);
  }
  return staircase_of(ivs, validation.size(), StaircaseBound::Direction::lower);
}

StaircaseBound lower_bound_path(std::span<const ApproxSolution> solutions, const Dataset& validation) {
  if (solutions.empty()) throw ConfigError("lower_bound_path needs at least one solution");
  if (validation.empty()) throw DataError("empty validation set");
  std::vector<StaircaseBound> parts;
  parts.reserve(solutions.size());
  for (const auto& s : solutions) parts.push_back(lower_bound_staircase(s, validation));
  return StaircaseBound::pointwise_max(parts);
}

StaircaseBound upper_bound_path(const ApproxSolution& solution, const Dataset& validation) {
  if (validation.empty()) throw DataError("empty validation set");
  std::vector<GuaranteeInterval> ivs;
  for (std::size_t i = 0; i < validation.size(); ++i) {
    if (auto iv = correct_interval(solution, validation[i], i)) ivs.push_back(*iv);
  }
  return staircase_of(ivs, validation.size(), StaircaseBound::Direction::upper);
}

std::size_t validation_errors(std::span<const double> w, const Dataset& validation) {
  std::size_t errors = 0;
  for (const auto& inst : validation) {
    if (inst.label * dot(inst.features, w) < 0.0) ++errors;
  }
  return errors;
}

double validation_error(std::span<const double> w, const Dataset& validation) {
  if (validation.empty()) return 0.0;
  return static_cast<double>(validation_errors(w, validation)) / static_cast<double>(validation.size());
}

}  // namespace certreg

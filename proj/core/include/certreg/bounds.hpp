#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "certreg/data.hpp"
#include "certreg/solution.hpp"
#include "certreg/staircase.hpp"

namespace certreg {

/// Geometry of one (solution, validation input) pair:
///   alpha = (|w||x| + w.x) / 2     beta  = (|w||x| - w.x) / 2
///   gamma = (|g||x| + g.x) / 2     delta = (|g||x| - g.x) / 2
/// All four are non-negative by Cauchy-Schwarz.
struct BoundCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  double score() const noexcept { return alpha - beta; }
};

/// Precondition: x is not the zero vector.
BoundCoefficients coefficients(const ApproxSolution& solution, const SparseVector& x);
BoundCoefficients coefficients(std::span<const double> w, std::span<const double> g,
                               double norm_w, double norm_g, const SparseVector& x);

struct AffineInC {
  double intercept = 0.0;
  double slope = 0.0;
  double at(double c) const noexcept { return intercept + slope * c; }
};

/// Lower/upper envelopes of w*_C.x as affine functions of C on either side
/// of the solution's C~. With t = C / C~:
///
///   C >= C~:  lb = alpha - (beta + gamma) t     ub = -beta + (alpha + delta) t
///   C <  C~:  lb = -beta + (alpha - gamma) t    ub = alpha - (beta - delta) t
///
/// Both sides give (w.x - gamma, w.x + delta) at C = C~.
struct ScoreBoundLine {
  AffineInC lb_left;
  AffineInC lb_right;
  AffineInC ub_left;
  AffineInC ub_right;
  double c_tilde = 1.0;

  double lb(double c) const noexcept { return (c >= c_tilde ? lb_right : lb_left).at(c); }
  double ub(double c) const noexcept { return (c >= c_tilde ? ub_right : ub_left).at(c); }
};

ScoreBoundLine score_bound_line(const BoundCoefficients& k, double c_tilde);
ScoreBoundLine score_bound_line(const ApproxSolution& solution, const SparseVector& x);

struct ScoreBounds {
  double lb = 0.0;
  double ub = 0.0;
};

ScoreBounds score_bounds(const ApproxSolution& solution, const SparseVector& x, double c);

enum class GuaranteeKind { misclassified, correct };

/// Range of C on which one validation instance's classification by w*_C is
/// certain. Misclassification ranges are open, correctness ranges closed.
/// `lo` may be 0 and `hi` may be +infinity.
struct GuaranteeInterval {
  double lo = 0.0;
  double hi = 0.0;
  GuaranteeKind kind = GuaranteeKind::misclassified;
  std::size_t instance = 0;

  bool closed() const noexcept { return kind == GuaranteeKind::correct; }
  bool contains(double c) const noexcept {
    return closed() ? (lo <= c && c <= hi) : (lo < c && c < hi);
  }
  StaircaseBound::Interval as_staircase_interval() const noexcept {
    return {lo, hi, closed(), closed()};
  }
};

/// The interval always contains the solution's C~ when it exists: an
/// instance is certainly misclassified near C~ exactly when it is at C~.
std::optional<GuaranteeInterval> misclassified_interval(const BoundCoefficients& k, int label,
                                                        double c_tilde, std::size_t instance = 0);
std::optional<GuaranteeInterval> correct_interval(const BoundCoefficients& k, int label,
                                                  double c_tilde, std::size_t instance = 0);

std::optional<GuaranteeInterval> misclassified_interval(const ApproxSolution& solution,
                                                        const LabeledInstance& x,
                                                        std::size_t instance = 0);
std::optional<GuaranteeInterval> correct_interval(const ApproxSolution& solution,
                                                  const LabeledInstance& x, std::size_t instance = 0);

/// Restriction to [c_lo, c_hi]; nullopt if nothing is left.
std::optional<GuaranteeInterval> clip(const GuaranteeInterval& iv, double c_lo, double c_hi);

struct SolutionIntervals {
  std::vector<GuaranteeInterval> misclassified;
  std::vector<GuaranteeInterval> correct;
};

SolutionIntervals guarantee_intervals(const ApproxSolution& solution, const Dataset& validation);

/// Integer point bounds at C~ from weights and subgradient.
PointBounds point_bounds(std::span<const double> w, std::span<const double> g, double norm_w,
                         double norm_g, const Dataset& validation);
PointBounds point_bounds(const ApproxSolution& solution, const Dataset& validation);

/// Validation-error lower bound from one solution (count = guaranteed
/// misclassified instances).
StaircaseBound lower_bound_staircase(const ApproxSolution& solution, const Dataset& validation);
/// Pointwise maximum over solutions. Throws on empty inputs.
StaircaseBound lower_bound_path(std::span<const ApproxSolution> solutions, const Dataset& validation);
/// Validation-error upper bound from one solution (count = guaranteed
/// correct instances, value = 1 - count / n').
StaircaseBound upper_bound_path(const ApproxSolution& solution, const Dataset& validation);

/// Misclassification count of w itself (zero scores count as correct).
std::size_t validation_errors(std::span<const double> w, const Dataset& validation);
double validation_error(std::span<const double> w, const Dataset& validation);

}  // namespace certreg

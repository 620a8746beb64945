#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "certreg/data.hpp"

namespace certreg {

/// Integer form of the validation-error bounds at the solution's own C:
/// `guaranteed_wrong` instances are certainly misclassified by w*_C,
/// `guaranteed_right` certainly classified correctly.
struct PointBounds {
  std::size_t guaranteed_wrong = 0;
  std::size_t guaranteed_right = 0;
  std::size_t total = 0;

  /// Instances whose classification is not pinned down.
  std::size_t undecided() const noexcept { return total - guaranteed_wrong - guaranteed_right; }
  /// Upper bound on the misclassification count.
  std::size_t possibly_wrong() const noexcept { return total - guaranteed_right; }
  double lb() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(guaranteed_wrong) / static_cast<double>(total);
  }
  double ub() const noexcept {
    return total == 0 ? 1.0 : static_cast<double>(possibly_wrong()) / static_cast<double>(total);
  }

  PointBounds& operator+=(const PointBounds& o) noexcept {
    guaranteed_wrong += o.guaranteed_wrong;
    guaranteed_right += o.guaranteed_right;
    total += o.total;
    return *this;
  }
  friend bool operator==(const PointBounds&, const PointBounds&) = default;
};

/// A (possibly inexact) minimizer at one regularization value together with
/// the objective subgradient that certifies how inexact it is.
struct ApproxSolution {
  double c = 1.0;
  std::vector<double> weights;
  std::vector<double> subgradient;  // w + C sum_i xi_i(w)
  double norm_w = 0.0;
  double norm_g = 0.0;
  double objective = 0.0;
  PointBounds point_bounds;
  bool is_exact = false;   // norm_g below the exact-mode threshold
  bool converged = false;  // the requested stopping target was met
  int iterations = 0;
  std::vector<double> objective_trace;  // objective after each accepted step (initial value plus summed decreases)
};

/// Fills norms (and nothing else) from weights and subgradient.
void refresh_norms(ApproxSolution& s);

}  // namespace certreg

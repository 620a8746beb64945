#pragma once

#include <optional>
#include <span>

#include "certreg/data.hpp"
#include "certreg/loss.hpp"
#include "certreg/solution.hpp"

namespace certreg {

struct SolverConfig {
  int max_iterations = 1000;
  /// Approximate mode stops once UB - LB of the validation error at C~ is
  /// at most gap_target_fraction * epsilon.
  double gap_target_fraction = 0.1;
  /// Exact mode stops at ||g|| <= exact_tolerance * (||w|| + 1).
  double exact_tolerance = 1e-6;
  /// Point bounds are evaluated every this many iterations (and at start).
  int gap_check_interval = 1;
  double armijo_sigma = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 60;
  int cg_max_iterations = 250;
};

struct SolveMode {
  enum class Kind { exact, approximate };
  Kind kind = Kind::exact;
  double epsilon = 0.0;

  static SolveMode exact() { return {Kind::exact, 0.0}; }
  static SolveMode approximate(double epsilon) { return {Kind::approximate, epsilon}; }
};

/// Minimizes 0.5 ||w||^2 + C sum_i l(y_i, w^T x_i) over `train`.
/// Point bounds of the result are taken on `validation`. A solution that
/// misses its target within max_iterations comes back with converged=false.
ApproxSolution solve(const Dataset& train, const Dataset& validation, const LossKind& kind, double c,
                     const SolverConfig& config, const SolveMode& mode,
                     std::optional<std::span<const double>> warm_start = std::nullopt);

/// Whether `pb` meets the approximate-mode gap target for `epsilon`.
bool gap_target_met(const PointBounds& pb, double epsilon, double fraction);

}  // namespace certreg

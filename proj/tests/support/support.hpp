#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "certreg/data.hpp"
#include "certreg/pathalg.hpp"

namespace certreg::testing {

/// Noisy linear-model data: Gaussian features, labels from a random
/// hyperplane with flip probability `noise`. Both classes always occur.
Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d, double noise = 0.15);

/// Train and validation sets of independent sizes drawn from [n_lo, n_hi]
/// and a dimension from [d_lo, d_hi], already standardized on train.
Fold random_fold(std::mt19937_64& rng, std::size_t n_lo = 10, std::size_t n_hi = 30,
                 std::size_t d_lo = 2, std::size_t d_hi = 5);

/// Independent dense solver for the huber-hinge objective, used as ground
/// truth. Newton with backtracking, run to ||g|| <= tol.
struct OracleSolution {
  double c = 0.0;
  std::vector<double> w;
  double grad_norm = 0.0;
};

class Oracle {
 public:
  explicit Oracle(const Dataset& train, double huber_width = 1.0, double tol = 1e-8);

  OracleSolution solve(double c, const std::vector<double>* warm = nullptr) const;
  double objective(const std::vector<double>& w, double c) const;

  /// Misclassification counts of the exact minimizer on `validation`:
  /// `lo` counts instances that are wrong for every w within ||g|| of the
  /// oracle's answer, `hi` those that are wrong for some such w.
  struct ErrorRange {
    std::size_t lo = 0;
    std::size_t hi = 0;
  };
  static ErrorRange errors(const OracleSolution& s, const Dataset& validation);

  std::size_t dimension() const noexcept { return d_; }

 private:
  const Dataset& train_;
  double h_;
  double tol_;
  std::size_t d_;
};

/// ApproxSolution for arbitrary weights (subgradient, norms and point
/// bounds filled in), e.g. deliberately perturbed ones.
ApproxSolution solution_from_weights(const Dataset& train, const Dataset& validation, const LossKind& loss,
                                     double c, std::vector<double> w);

/// `t` log-spaced values over [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t t);

/// Exact minimizers over a log grid, warm started along it.
std::vector<OracleSolution> oracle_path(const Oracle& oracle, const std::vector<double>& cs);

}  // namespace certreg::testing

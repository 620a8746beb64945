#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certreg/data.hpp"
#include "certreg/loss.hpp"
#include "certreg/solution.hpp"
#include "certreg/solver.hpp"
#include "certreg/staircase.hpp"

namespace certreg {

enum class SolutionMode { exact, approximate };

struct SearchConfig {
  double c_min = 1e-3;
  double c_max = 1e3;
  double epsilon = 0.1;
  int grid_m = 4;       // coarse grid size (0 behaves like 1)
  double rho = 1.5;     // overstep factor (1 disables it)
  double min_step = 1e-6;
  SolutionMode solution_mode = SolutionMode::approximate;
  int max_recursion = 64;
  LossKind loss = LossKind::huber();
  SolverConfig solver;
  unsigned threads = 1;  // fold solves running at once; 0 = hardware
  std::uint64_t seed = 0;

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
  /// Mode handed to the solver; epsilon = 0 always means exact.
  SolveMode solve_mode() const;
  /// floor(epsilon * n) as an instance count.
  std::size_t allowed_count(double eps, std::size_t n) const;
};

/// Solutions for every fold at one shared C~.
struct Trial {
  double c = 0.0;
  std::vector<ApproxSolution> folds;
  PointBounds bounds;  // summed over folds
  int iterations = 0;  // summed over folds
};

/// Training/validation folds plus the solver settings; a holdout problem is
/// the one-fold case. Solving never mutates the problem.
class Problem {
 public:
  Problem(std::vector<Fold> folds, const SearchConfig& config);

  /// Solves every fold at `c`, warm started from `warm` when given.
  /// Throws SolverError if any fold misses its stopping target.
  Trial solve_at(double c, const Trial* warm) const;

  const std::vector<Fold>& folds() const noexcept { return folds_; }
  std::size_t validation_total() const noexcept { return validation_total_; }
  const SearchConfig& config() const noexcept { return config_; }

 private:
  std::vector<Fold> folds_;
  SearchConfig config_;
  std::size_t validation_total_ = 0;
};

/// Sorted breakpoint multisets of one trial (all folds pooled).
///   gamma:  right ends of misclassification intervals, ascending
///   delta:  left ends of misclassification intervals, descending
///   lambda: right ends of misclassification and correctness intervals,
///           ascending
struct BreakpointSet {
  std::vector<double> gamma;
  std::vector<double> delta;
  std::vector<double> lambda;
};

BreakpointSet breakpoint_set(const Trial& trial, const Problem& problem);

struct SolvedPoint {
  double c = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  int iterations = 0;

  friend bool operator==(const SolvedPoint&, const SolvedPoint&) = default;
};

struct SolverInfo {
  std::string loss = "huber";
  double huber_width = 1.0;
  std::string solution_mode = "approximate";
  double gap_target_fraction = 0.1;
  double exact_tolerance = 1e-6;
  int max_iterations = 0;
  long long total_iterations = 0;
  std::size_t folds = 1;
  std::size_t validation_size = 0;
  std::size_t fallback_steps = 0;  // multiplicative steps taken with an empty Gamma
  std::size_t min_steps = 0;       // steps lengthened to min_step (coverage may have a gap there)

  friend bool operator==(const SolverInfo&, const SolverInfo&) = default;
};

/// Lower-bound staircase in serialized form: `values` interleaves segment
/// and breakpoint values, seg_0, pt_0, seg_1, ..., pt_{m-1}, seg_m.
struct LowerBoundPath {
  std::vector<double> breakpoints;
  std::vector<double> values;

  friend bool operator==(const LowerBoundPath&, const LowerBoundPath&) = default;
};

LowerBoundPath to_lower_bound_path(const StaircaseBound& s);
StaircaseBound from_lower_bound_path(const LowerBoundPath& p, std::size_t total);

struct Certificate {
  std::string mode;
  double c_best = 0.0;
  double ev_best = 1.0;  // validation-error upper bound at c_best
  double certified_epsilon = 1.0;
  double epsilon_target = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
  std::vector<SolvedPoint> solved;  // in solve order
  LowerBoundPath lower_bound_path;
  SolverInfo solver;
  std::uint64_t seed = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct SearchResult {
  Certificate certificate;
  std::vector<Trial> trials;  // solve order
  StaircaseBound lower_bound;  // summed over folds
  double lower_bound_min = 0.0;
  double wall_time_seconds = 0.0;
};

/// Lower bound on the validation (or summed CV) error: per fold the
/// pointwise max over trials, then the sum over folds.
StaircaseBound merged_lower_bound(std::span<const Trial> trials, const Problem& problem);

/// Certifies the approximation level of a set of trials.
SearchResult certify_trials(std::vector<Trial> trials, const Problem& problem,
                            const std::string& mode = "certify");
/// Holdout convenience form.
SearchResult certify(std::span<const ApproxSolution> solutions, const Dataset& validation,
                     const SearchConfig& config);

/// Solves at each C of `cs` (warm starting along the list) and certifies.
SearchResult certify_list(const Problem& problem, std::span<const double> cs,
                          const std::string& mode = "certify");

/// Where the epsilon guarantee of `trial` ends to the right of its C~,
/// given the best misclassification upper-bound count so far:
/// the k-th smallest element of Gamma with k = lb - best + floor(eps n) + 1
/// (k <= 0 taken as 1). +infinity when Gamma runs out before k.
/// `fallback` is set when k <= 0 and Gamma is empty.
double reach_right(const Trial& trial, const Problem& problem, std::size_t best_count, double eps,
                   bool* fallback = nullptr);
/// Mirror image: the k-th largest element of Delta, 0 when Delta runs out.
double reach_left(const Trial& trial, const Problem& problem, std::size_t best_count, double eps);

/// Next C of the plain search, or nullopt once the guarantee reaches past C_u.
std::optional<double> next_c(const Trial& trial, const Problem& problem, std::size_t best_count,
                             double eps, bool* fallback = nullptr);

/// Sequential search: each solve jumps to where the previous guarantee ends.
SearchResult find_approx_parameter(const Problem& problem);
/// Same search seeded by a coarse grid, with overstep-and-repair.
SearchResult find_approx_parameter_tricked(const Problem& problem);

struct PathResult {
  std::vector<double> breakpoints;  // C_1 .. C_{T+1}, C_{T+1} = C_u
  std::vector<Trial> trials;        // trial t is used on [C_t, C_{t+1})
  long long total_iterations = 0;
  std::size_t forced_steps = 0;  // steps lengthened to min_step
};

/// Piecewise-constant path whose validation error is within
/// epsilon of the optimal solution's at every C in [C_l, C_u].
PathResult track_path(const Problem& problem);

enum class CvAlgorithm { certify, find, tricked };

struct CvOptions {
  std::size_t k = 10;
  CvAlgorithm algorithm = CvAlgorithm::find;
  bool standardize = true;
  std::vector<double> c_list;  // certify only; empty means a 10-point grid
};

/// k-fold CV versions of the algorithms; the folds come from `data` and
/// config.seed.
SearchResult cv_certify(const Dataset& data, const CvOptions& options, const SearchConfig& config);
/// The two halves of cv_certify.
Problem cv_problem(const Dataset& data, const CvOptions& options, const SearchConfig& config);
SearchResult run_cv(const Problem& problem, const CvOptions& options);

/// T log-evenly spaced values in [c_min, c_max] (T = 1 gives {c_min}).
std::vector<double> grid_strategy(const SearchConfig& config, std::size_t t);

/// Log-midpoint of the leftmost piece where `lower` attains its minimum
/// over [c_min, c_max], skipping already solved values. With no solutions
/// yet it is the log-midpoint of the whole range.
double bound_guided_strategy(const SearchConfig& config, const StaircaseBound* lower,
                             std::span<const double> solved);

/// Certified epsilon after each of `t_max` solves; trial t of the
/// bound-guided sequence sits at bound_guided_strategy of the first t-1.
struct EpsilonCurvePoint {
  std::size_t t = 0;
  double grid_epsilon = 1.0;
  double bound_guided_epsilon = 1.0;
};
std::vector<EpsilonCurvePoint> epsilon_curve(const Problem& problem, std::size_t t_max);

/// Index of the trial whose C is closest in log scale (earliest on ties).
std::optional<std::size_t> nearest_trial(std::span<const Trial> trials, double c);

}  // namespace certreg

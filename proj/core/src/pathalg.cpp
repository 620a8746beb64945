#include "certreg/pathalg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <limits>
#include <thread>

#include "certreg/bounds.hpp"
#include "certreg/error.hpp"

namespace certreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs work(0..n-1) on up to `threads` threads; rethrows the first failure
// in index order so errors do not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      work(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    for (std::size_t begin = 0; begin < n; begin += threads) {
      std::vector<std::thread> pool;
      const std::size_t end = std::min<std::size_t>(n, begin + threads);
      for (std::size_t i = begin; i < end; ++i) pool.emplace_back(guarded, i);
      for (auto& t : pool) t.join();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format_c(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", c);
  return buf;
}

}  // namespace

void SearchConfig::validate() const {
  if (!(c_min > 0.0) || !std::isfinite(c_max) || !(c_min < c_max))
    throw ConfigError("need 0 < c_min < c_max < inf");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  if (grid_m < 0) throw ConfigError("grid size m must be non-negative");
  if (!(rho >= 1.0)) throw ConfigError("rho must be at least 1");
  if (!(min_step > 0.0)) throw ConfigError("min_step must be positive");
  if (max_recursion < 1) throw ConfigError("max_recursion must be positive");
  if (!(solver.gap_target_fraction > 0.0 && solver.gap_target_fraction < 1.0))
    throw ConfigError("gap_target_fraction must lie in (0, 1)");
  if (!(solver.exact_tolerance > 0.0)) throw ConfigError("exact tolerance must be positive");
  if (solver.max_iterations < 1) throw ConfigError("max_iterations must be positive");
  if (loss.variant == LossKind::Variant::huber_hinge && !(loss.huber_width > 0.0))
    throw ConfigError("huber width must be positive");
}

SolveMode SearchConfig::solve_mode() const {
  if (solution_mode == SolutionMode::exact || epsilon == 0.0) return SolveMode::exact();
  return SolveMode::approximate(epsilon);
}

std::size_t SearchConfig::allowed_count(double eps, std::size_t n) const {
  // The small slack absorbs representation error when eps * n is integral.
  return static_cast<std::size_t>(std::floor(eps * static_cast<double>(n) + 1e-9));
}

Problem::Problem(std::vector<Fold> folds, const SearchConfig& config)
    : folds_(std::move(folds)), config_(config) {
  config_.validate();
  if (folds_.empty()) throw ConfigError("problem needs at least one fold");
  std::size_t d = 0;
  for (const auto& f : folds_) {
    if (f.validation.empty()) throw DataError("empty validation set");
    d = std::max({d, f.train.dimension(), f.validation.dimension()});
  }
  for (std::size_t k = 0; k < folds_.size(); ++k) {
    auto& f = folds_[k];
    f.train = f.train.with_dimension(d);
    f.validation = f.validation.with_dimension(d);
    validation_total_ += f.validation.size();
    if (!f.train.empty()) {
      const int first = f.train[0].label;
      const bool one_class = std::all_of(f.train.begin(), f.train.end(),
                                         [&](const LabeledInstance& x) { return x.label == first; });
      if (one_class) std::clog << "warning: fold " << k << " trains on a single class\n";
    }
  }
}

Trial Problem::solve_at(double c, const Trial* warm) const {
  Trial t;
  t.c = c;
  t.folds.resize(folds_.size());
  const SolveMode mode = config_.solve_mode();
  parallel_for(folds_.size(), config_.threads, [&](std::size_t k) {
    std::optional<std::span<const double>> ws;
    if (warm != nullptr) ws = std::span<const double>(warm->folds[k].weights);
    t.folds[k] = solve(folds_[k].train, folds_[k].validation, config_.loss, c, config_.solver, mode, ws);
  });
  for (std::size_t k = 0; k < t.folds.size(); ++k) {
    const auto& s = t.folds[k];
    if (!s.converged) {
      throw SolverError("solver did not reach its target at C = " + format_c(c) +
                        (folds_.size() > 1 ? " (fold " + std::to_string(k) + ")" : std::string()) +
                        " after " + std::to_string(s.iterations) + " iterations");
    }
    t.bounds += s.point_bounds;
    t.iterations += s.iterations;
  }
  return t;
}

BreakpointSet breakpoint_set(const Trial& trial, const Problem& problem) {
  BreakpointSet b;
  for (std::size_t k = 0; k < trial.folds.size(); ++k) {
    const auto ivs = guarantee_intervals(trial.folds[k], problem.folds()[k].validation);
    for (const auto& iv : ivs.misclassified) {
      if (std::isfinite(iv.hi)) {
        b.gamma.push_back(iv.hi);
        b.lambda.push_back(iv.hi);
      }
      if (iv.lo > 0.0) b.delta.push_back(iv.lo);
    }
    for (const auto& iv : ivs.correct) {
      if (std::isfinite(iv.hi)) b.lambda.push_back(iv.hi);
    }
  }
  std::sort(b.gamma.begin(), b.gamma.end());
  std::sort(b.delta.begin(), b.delta.end(), std::greater<>());
  std::sort(b.lambda.begin(), b.lambda.end());
  return b;
}

LowerBoundPath to_lower_bound_path(const StaircaseBound& s) {
  LowerBoundPath p;
  p.breakpoints = s.breakpoints();
  const auto& seg = s.segment_counts();
  const auto& pt = s.point_counts();
  p.values.push_back(s.value_of(seg[0]));
  for (std::size_t j = 0; j < pt.size(); ++j) {
    p.values.push_back(s.value_of(pt[j]));
    p.values.push_back(s.value_of(seg[j + 1]));
  }
  return p;
}

StaircaseBound from_lower_bound_path(const LowerBoundPath& p, std::size_t total) {
  if (p.values.size() != 2 * p.breakpoints.size() + 1)
    throw DataError("lower_bound_path: values must have 2 m + 1 entries");
  auto count = [&](double v) {
    const double c = std::round(v * static_cast<double>(total));
    if (!(c >= 0.0) || c > static_cast<double>(total)) throw DataError("lower_bound_path: value out of range");
    return static_cast<std::size_t>(c);
  };
  std::vector<std::size_t> seg;
  std::vector<std::size_t> pt;
  for (std::size_t j = 0; j < p.values.size(); ++j) (j % 2 == 0 ? seg : pt).push_back(count(p.values[j]));
  return StaircaseBound(p.breakpoints, std::move(seg), std::move(pt), total,
                        StaircaseBound::Direction::lower);
}

StaircaseBound merged_lower_bound(std::span<const Trial> trials, const Problem& problem) {
  if (trials.empty()) throw ConfigError("no solutions to certify");
  std::vector<StaircaseBound> per_fold;
  for (std::size_t k = 0; k < problem.folds().size(); ++k) {
    std::vector<StaircaseBound> parts;
    parts.reserve(trials.size());
    for (const auto& t : trials) parts.push_back(lower_bound_staircase(t.folds[k], problem.folds()[k].validation));
    per_fold.push_back(StaircaseBound::pointwise_max(parts));
  }
  return per_fold.size() == 1 ? per_fold.front() : StaircaseBound::sum(per_fold);
}

namespace {

SolverInfo solver_info(const Problem& problem) {
  const auto& cfg = problem.config();
  SolverInfo info;
  info.loss = std::string(to_string(cfg.loss.variant));
  info.huber_width = cfg.loss.huber_width;
  info.solution_mode = cfg.solve_mode().kind == SolveMode::Kind::exact ? "exact" : "approximate";
  info.gap_target_fraction = cfg.solver.gap_target_fraction;
  info.exact_tolerance = cfg.solver.exact_tolerance;
  info.max_iterations = cfg.solver.max_iterations;
  info.folds = problem.folds().size();
  info.validation_size = problem.validation_total();
  return info;
}

}  // namespace

SearchResult certify_trials(std::vector<Trial> trials, const Problem& problem, const std::string& mode) {
  if (trials.empty()) throw ConfigError("no solutions to certify");
  const auto& cfg = problem.config();
  const std::size_t n = problem.validation_total();

  SearchResult r;
  auto& cert = r.certificate;
  cert.mode = mode;
  cert.epsilon_target = cfg.epsilon;
  cert.c_min = cfg.c_min;
  cert.c_max = cfg.c_max;
  cert.seed = cfg.seed;
  cert.solver = solver_info(problem);

  std::size_t best_count = n + 1;
  for (const auto& t : trials) {
    if (t.c < cfg.c_min || t.c > cfg.c_max)
      throw ConfigError("solution at C = " + format_c(t.c) + " lies outside [c_min, c_max]");
    if (t.bounds.possibly_wrong() < best_count) {
      best_count = t.bounds.possibly_wrong();
      cert.c_best = t.c;
    }
    cert.solved.push_back({t.c, t.bounds.lb(), t.bounds.ub(), t.iterations});
    cert.solver.total_iterations += t.iterations;
  }
  r.lower_bound = merged_lower_bound(trials, problem);
  const auto low = r.lower_bound.min_count_over(cfg.c_min, cfg.c_max);
  r.lower_bound_min = r.lower_bound.value_of(low.count);
  cert.ev_best = static_cast<double>(best_count) / static_cast<double>(n);
  cert.certified_epsilon = (static_cast<double>(best_count) - static_cast<double>(low.count)) /
                           static_cast<double>(n);
  cert.lower_bound_path = to_lower_bound_path(r.lower_bound);
  r.trials = std::move(trials);
  return r;
}

SearchResult certify(std::span<const ApproxSolution> solutions, const Dataset& validation,
                     const SearchConfig& config) {
  if (solutions.empty()) throw ConfigError("no solutions to certify");
  Problem problem({Fold{Dataset{}, validation}}, config);
  std::vector<Trial> trials;
  for (const auto& s : solutions) {
    Trial t;
    t.c = s.c;
    t.folds = {s};
    t.folds[0].point_bounds = point_bounds(s, problem.folds()[0].validation);
    t.bounds = t.folds[0].point_bounds;
    t.iterations = s.iterations;
    trials.push_back(std::move(t));
  }
  return certify_trials(std::move(trials), problem);
}

std::optional<std::size_t> nearest_trial(std::span<const Trial> trials, double c) {
  std::optional<std::size_t> best;
  double best_d = kInf;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const double dist = std::abs(std::log(trials[i].c) - std::log(c));
    if (dist < best_d) {
      best_d = dist;
      best = i;
    }
  }
  return best;
}

namespace {

// Solved trials plus the running best upper-bound count.
class SearchState {
 public:
  explicit SearchState(const Problem& problem) : problem_(problem) {}

  std::size_t solve(double c) {
    const auto w = nearest_trial(trials_, c);
    trials_.push_back(problem_.solve_at(c, w ? &trials_[*w] : nullptr));
    const auto& t = trials_.back();
    if (t.bounds.possibly_wrong() < best_count_) best_count_ = t.bounds.possibly_wrong();
    return trials_.size() - 1;
  }

  const Trial& operator[](std::size_t i) const { return trials_[i]; }
  std::size_t best_count() const noexcept { return best_count_; }
  std::vector<Trial>& trials() noexcept { return trials_; }
  std::size_t fallbacks = 0;
  std::size_t min_steps = 0;

 private:
  const Problem& problem_;
  std::vector<Trial> trials_;
  std::size_t best_count_ = std::numeric_limits<std::size_t>::max();
};

// k = lb - best + floor(eps n) + 1 as a signed integer.
long long order_index(std::size_t lb, std::size_t best, std::size_t allowed) {
  return static_cast<long long>(lb) - static_cast<long long>(best) + static_cast<long long>(allowed) + 1;
}

SearchResult finish_search(SearchState& state, const Problem& problem, const std::string& mode,
                           Clock::time_point t0) {
  auto r = certify_trials(std::move(state.trials()), problem, mode);
  r.certificate.solver.fallback_steps = state.fallbacks;
  r.certificate.solver.min_steps = state.min_steps;
  r.wall_time_seconds = seconds_since(t0);
  return r;
}

}  // namespace

double reach_right(const Trial& trial, const Problem& problem, std::size_t best_count, double eps,
                   bool* fallback) {
  const std::size_t allowed = problem.config().allowed_count(eps, problem.validation_total());
  long long k = order_index(trial.bounds.guaranteed_wrong, best_count, allowed);
  const auto b = breakpoint_set(trial, problem);
  if (fallback != nullptr) *fallback = k <= 0 && b.gamma.empty();
  if (k <= 0) k = 1;
  if (static_cast<std::size_t>(k) > b.gamma.size()) return kInf;
  return b.gamma[static_cast<std::size_t>(k) - 1];
}

double reach_left(const Trial& trial, const Problem& problem, std::size_t best_count, double eps) {
  const std::size_t allowed = problem.config().allowed_count(eps, problem.validation_total());
  long long k = order_index(trial.bounds.guaranteed_wrong, best_count, allowed);
  const auto b = breakpoint_set(trial, problem);
  if (k <= 0) {
    if (b.delta.empty()) return trial.c;
    k = 1;
  }
  if (static_cast<std::size_t>(k) > b.delta.size()) return 0.0;
  return b.delta[static_cast<std::size_t>(k) - 1];
}

std::optional<double> next_c(const Trial& trial, const Problem& problem, std::size_t best_count,
                             double eps, bool* fallback) {
  const double c_max = problem.config().c_max;
  bool fb = false;
  double next = reach_right(trial, problem, best_count, eps, &fb);
  if (fallback != nullptr) *fallback = fb;
  if (fb) {
    if (trial.c >= c_max) return std::nullopt;
    return std::min(trial.c * 1.05, c_max);
  }
  if (next > c_max) return std::nullopt;
  return next;
}

SearchResult find_approx_parameter(const Problem& problem) {
  const auto t0 = Clock::now();
  const auto& cfg = problem.config();
  SearchState state(problem);
  double c = cfg.c_min;
  for (;;) {
    const std::size_t i = state.solve(c);
    bool fb = false;
    const auto next = next_c(state[i], problem, state.best_count(), cfg.epsilon, &fb);
    if (fb) ++state.fallbacks;
    if (!next) break;
    // Guarantees expiring ever closer to a sign change of a validation score
    // would otherwise never get past it.
    if (*next < c + cfg.min_step) {
      c = std::min(c + cfg.min_step, cfg.c_max);
      ++state.min_steps;
      if (c <= state[i].c) break;
    } else {
      c = *next;
    }
  }
  return finish_search(state, problem, "find", t0);
}

namespace {

class TrickedSearch {
 public:
  TrickedSearch(const Problem& problem, SearchState& state) : problem_(problem), state_(state) {}

  // Right end of trial i's epsilon guarantee; a trial whose guarantee fails
  // at its own C covers nothing beyond it.
  double right_reach(std::size_t i, double eps) {
    bool fb = false;
    const double r = reach_right(state_[i], problem_, state_.best_count(), eps, &fb);
    return fb ? state_[i].c : r;
  }

  void recursive_check(std::size_t left, std::size_t right, int depth) {
    const double eps = problem_.config().epsilon;
    const double cr = right_reach(left, eps);
    const double cl = reach_left(state_[right], problem_, state_.best_count(), eps);
    if (cl < cr) return;
    if (depth >= problem_.config().max_recursion)
      throw SolverError("recursive check exceeded depth " + std::to_string(depth) + " between C = " +
                        format_c(state_[left].c) + " and C = " + format_c(state_[right].c));
    const double lo = state_[left].c;
    const double hi = state_[right].c;
    const double min_step = problem_.config().min_step;
    if (hi - lo < 2.0 * min_step) {
      ++state_.min_steps;
      return;
    }
    double mid = std::clamp(0.5 * (cl + cr), lo + min_step, hi - min_step);
    const std::size_t m = state_.solve(mid);
    recursive_check(left, m, depth + 1);
    recursive_check(m, right, depth + 1);
  }

  void segment(std::size_t start, std::optional<std::size_t> end_index, double end) {
    const auto& cfg = problem_.config();
    const bool last = !end_index.has_value();
    std::size_t cur = start;
    for (;;) {
      bool fb = false;
      const double r = reach_right(state_[cur], problem_, state_.best_count(), cfg.epsilon, &fb);
      if (fb) ++state_.fallbacks;
      if (!fb && (r > end || (r == end && !last))) return;

      double tmp = fb ? std::min(state_[cur].c * 1.05, end)
                      : reach_right(state_[cur], problem_, state_.best_count(), cfg.rho * cfg.epsilon);
      if (tmp < state_[cur].c + cfg.min_step) {
        tmp = state_[cur].c + cfg.min_step;
        ++state_.min_steps;
      }
      if (tmp >= end) {
        std::size_t right = 0;
        if (last) {
          if (state_[cur].c >= end) return;
          right = state_.solve(end);
        } else {
          right = *end_index;
        }
        recursive_check(cur, right, 0);
        return;
      }
      const std::size_t right = state_.solve(tmp);
      const double cr = right_reach(cur, cfg.epsilon);
      const double cl = reach_left(state_[right], problem_, state_.best_count(), cfg.epsilon);
      if (!(cl < cr)) recursive_check(cur, right, 0);
      cur = right;
    }
  }

 private:
  const Problem& problem_;
  SearchState& state_;
};

}  // namespace

SearchResult find_approx_parameter_tricked(const Problem& problem) {
  const auto t0 = Clock::now();
  const auto& cfg = problem.config();
  SearchState state(problem);
  const int m = std::max(cfg.grid_m, 1);
  const double log_lo = std::log10(cfg.c_min);
  const double step = (std::log10(cfg.c_max) - log_lo) / m;
  std::vector<std::size_t> coarse;
  for (int h = 0; h < m; ++h) {
    const double c = h == 0 ? cfg.c_min : std::pow(10.0, log_lo + h * step);
    coarse.push_back(state.solve(c));
  }
  TrickedSearch search(problem, state);
  for (int h = 0; h < m; ++h) {
    if (h + 1 < m) {
      const std::size_t next = coarse[static_cast<std::size_t>(h) + 1];
      search.segment(coarse[static_cast<std::size_t>(h)], next, state[next].c);
    } else {
      search.segment(coarse[static_cast<std::size_t>(h)], std::nullopt, cfg.c_max);
    }
  }
  return finish_search(state, problem, "find-tricked", t0);
}

PathResult track_path(const Problem& problem) {
  const auto& cfg = problem.config();
  const std::size_t n = problem.validation_total();
  const std::size_t allowed = cfg.allowed_count(cfg.epsilon, n);
  PathResult out;
  double c = cfg.c_min;
  for (;;) {
    Trial t = problem.solve_at(c, out.trials.empty() ? nullptr : &out.trials.back());
    out.total_iterations += t.iterations;
    long long k = static_cast<long long>(allowed) - static_cast<long long>(t.bounds.undecided()) + 1;
    if (k <= 0) k = 1;
    const auto b = breakpoint_set(t, problem);
    double next = static_cast<std::size_t>(k) > b.lambda.size() ? kInf : b.lambda[static_cast<std::size_t>(k) - 1];
    if (next < c + cfg.min_step) {
      next = c + cfg.min_step;
      ++out.forced_steps;
    }
    out.breakpoints.push_back(c);
    out.trials.push_back(std::move(t));
    if (next >= cfg.c_max) break;
    c = next;
  }
  out.breakpoints.push_back(cfg.c_max);
  return out;
}

std::vector<double> grid_strategy(const SearchConfig& config, std::size_t t) {
  if (t == 0) throw ConfigError("grid needs at least one point");
  std::vector<double> cs{config.c_min};
  if (t == 1) return cs;
  const double lo = std::log10(config.c_min);
  const double hi = std::log10(config.c_max);
  for (std::size_t i = 1; i + 1 < t; ++i)
    cs.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(t - 1)));
  cs.push_back(config.c_max);
  return cs;
}

double bound_guided_strategy(const SearchConfig& config, const StaircaseBound* lower,
                             std::span<const double> solved) {
  if (lower == nullptr) return std::sqrt(config.c_min * config.c_max);
  struct Piece {
    std::size_t count;
    double c;
  };
  std::vector<Piece> pieces;
  const auto& bp = lower->breakpoints();
  pieces.push_back({lower->count_at(config.c_min), config.c_min});
  std::size_t j = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), config.c_min) - bp.begin());
  for (;; ++j) {
    const double a = j == 0 ? config.c_min : std::max(bp[j - 1], config.c_min);
    const double b = j < bp.size() ? std::min(bp[j], config.c_max) : config.c_max;
    if (a < b) pieces.push_back({lower->segment_counts()[j], std::sqrt(a * b)});
    if (j >= bp.size() || bp[j] >= config.c_max) break;
    pieces.push_back({lower->point_counts()[j], bp[j]});
  }
  pieces.push_back({lower->count_at(config.c_max), config.c_max});

  std::size_t low = pieces.front().count;
  for (const auto& p : pieces) low = std::min(low, p.count);
  const Piece* first = nullptr;
  for (const auto& p : pieces) {
    if (p.count != low) continue;
    if (first == nullptr) first = &p;
    if (std::find(solved.begin(), solved.end(), p.c) == solved.end()) return p.c;
  }
  return first->c;
}

std::vector<EpsilonCurvePoint> epsilon_curve(const Problem& problem, std::size_t t_max) {
  const auto& cfg = problem.config();
  std::vector<EpsilonCurvePoint> curve;
  std::vector<Trial> cache;  // grid solutions, reused across T when C repeats
  std::vector<Trial> guided;
  std::vector<double> guided_cs;
  std::optional<StaircaseBound> lower;

  for (std::size_t t = 1; t <= t_max; ++t) {
    EpsilonCurvePoint point;
    point.t = t;

    std::vector<Trial> grid_trials;
    for (double c : grid_strategy(cfg, t)) {
      auto hit = std::find_if(cache.begin(), cache.end(), [&](const Trial& x) { return x.c == c; });
      if (hit == cache.end()) {
        const auto w = nearest_trial(cache, c);
        cache.push_back(problem.solve_at(c, w ? &cache[*w] : nullptr));
        hit = cache.end() - 1;
      }
      grid_trials.push_back(*hit);
    }
    point.grid_epsilon = certify_trials(std::move(grid_trials), problem).certificate.certified_epsilon;

    const double c = bound_guided_strategy(cfg, lower ? &*lower : nullptr, guided_cs);
    const auto w = nearest_trial(guided, c);
    guided.push_back(problem.solve_at(c, w ? &guided[*w] : nullptr));
    guided_cs.push_back(c);
    auto r = certify_trials(guided, problem);
    point.bound_guided_epsilon = r.certificate.certified_epsilon;
    lower = std::move(r.lower_bound);

    curve.push_back(point);
  }
  return curve;
}

Problem cv_problem(const Dataset& data, const CvOptions& options, const SearchConfig& config) {
  if (options.k < 2) throw ConfigError("cross-validation needs at least 2 folds");
  SplitSpec spec;
  spec.mode = SplitSpec::Mode::kfold;
  spec.k = options.k;
  spec.seed = config.seed;
  auto folds = split(data, spec);
  if (options.standardize) folds = standardize_folds(folds);
  return Problem(std::move(folds), config);
}

SearchResult run_cv(const Problem& problem, const CvOptions& options) {
  SearchResult r;
  switch (options.algorithm) {
    case CvAlgorithm::certify: {
      const auto cs = options.c_list.empty() ? grid_strategy(problem.config(), 10) : options.c_list;
      r = certify_list(problem, cs, "cv");
      break;
    }
    case CvAlgorithm::find: r = find_approx_parameter(problem); break;
    case CvAlgorithm::tricked: r = find_approx_parameter_tricked(problem); break;
  }
  r.certificate.mode = "cv";
  return r;
}

SearchResult cv_certify(const Dataset& data, const CvOptions& options, const SearchConfig& config) {
  return run_cv(cv_problem(data, options, config), options);
}

SearchResult certify_list(const Problem& problem, std::span<const double> cs, const std::string& mode) {
  const auto t0 = Clock::now();
  if (cs.empty()) throw ConfigError("empty C list");
  std::vector<Trial> trials;
  for (double c : cs) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("C values must be positive and finite");
    const auto w = nearest_trial(trials, c);
    trials.push_back(problem.solve_at(c, w ? &trials[*w] : nullptr));
  }
  auto r = certify_trials(std::move(trials), problem, mode);
  r.wall_time_seconds = seconds_since(t0);
  return r;
}

}  // namespace certreg

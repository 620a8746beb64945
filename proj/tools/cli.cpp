#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "certreg/bounds.hpp"
#include "certreg/data.hpp"
#include "certreg/error.hpp"
#include "certreg/io.hpp"
#include "certreg/pathalg.hpp"

namespace certreg::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << content;
  if (!out) throw ConfigError(path + ": write failed");
}

template <typename Writer>
void write_with(const std::string& path, Writer&& writer) {
  std::ostringstream s;
  writer(s);
  write_file(path, s.str());
}

SearchConfig search_config(const RunConfig& rc) {
  SearchConfig c;
  c.c_min = rc.c_min;
  c.c_max = rc.c_max;
  c.epsilon = rc.eps;
  c.grid_m = rc.grid_m;
  c.rho = rc.rho;
  c.min_step = rc.min_step;
  c.solution_mode = rc.exact ? SolutionMode::exact : SolutionMode::approximate;
  c.loss = parse_loss_kind(rc.loss, rc.huber_width);
  c.solver.max_iterations = rc.max_iterations;
  c.threads = effective_threads(rc.threads);
  c.seed = rc.seed;
  c.validate();
  return c;
}

// Training/validation pair for the holdout modes, standardized on train.
Fold holdout_fold(const RunConfig& rc) {
  ParseOptions po{rc.zero_one_labels};
  Fold f;
  if (!rc.data.empty()) {
    if (!rc.train.empty() || !rc.valid.empty()) throw ConfigError("give either --data or --train/--valid");
    SplitSpec spec;
    spec.holdout_fraction = rc.holdout;
    spec.seed = rc.seed;
    f = split(load_libsvm(rc.data, po), spec).front();
  } else {
    if (rc.train.empty() || rc.valid.empty()) throw ConfigError("need --train and --valid (or --data)");
    f.train = load_libsvm(rc.train, po);
    f.validation = load_libsvm(rc.valid, po);
  }
  if (rc.standardize) {
    const auto s = Standardizer::fit(f.train);
    f.train = s.apply(f.train);
    f.validation = s.apply(f.validation);
  }
  check_validation_inputs(f.validation);
  return f;
}

StaircaseBound best_upper_bound(const SearchResult& r, const Problem& problem) {
  const auto best = std::find_if(r.trials.begin(), r.trials.end(),
                                 [&](const Trial& t) { return t.c == r.certificate.c_best; });
  std::vector<StaircaseBound> parts;
  for (std::size_t k = 0; k < problem.folds().size(); ++k)
    parts.push_back(upper_bound_path(best->folds[k], problem.folds()[k].validation));
  return parts.size() == 1 ? parts.front() : StaircaseBound::sum(parts);
}

void write_artifacts(const RunConfig& rc, const SearchResult& r, const Problem& problem) {
  write_file(rc.out, certificate_json(r.certificate));
  if (!rc.plot_data) return;
  write_with(sibling_path(rc.out, ".lower.csv"), [&](std::ostream& o) { write_staircase_csv(o, r.lower_bound); });
  write_with(sibling_path(rc.out, ".upper.csv"),
             [&](std::ostream& o) { write_staircase_csv(o, best_upper_bound(r, problem)); });
  write_with(sibling_path(rc.out, ".points.csv"),
             [&](std::ostream& o) { write_point_bounds_csv(o, r.certificate); });
}

void report(std::ostream& log, const Certificate& c) {
  log << "mode=" << c.mode << " solved=" << c.solved.size() << " c_best=" << format_real(c.c_best)
      << " ev_best=" << format_real(c.ev_best) << " certified_epsilon=" << format_real(c.certified_epsilon)
      << '\n';
  if (c.solver.fallback_steps > 0)
    log << "note: " << c.solver.fallback_steps
        << " fallback step(s) were taken with no expiring guarantee to step to\n";
  if (c.solver.min_steps > 0)
    log << "note: " << c.solver.min_steps << " step(s) were lengthened to the minimum step\n";
}

int run_checked(const RunConfig& rc, std::ostream& log) {
  const auto config = search_config(rc);
  const std::string& mode = rc.mode;

  if (mode == "cv") {
    if (rc.data.empty()) throw ConfigError("cv mode needs --data");
    CvOptions opts;
    opts.k = rc.folds;
    opts.standardize = rc.standardize;
    if (rc.cv_algo == "certify") opts.algorithm = CvAlgorithm::certify;
    else if (rc.cv_algo == "find") opts.algorithm = CvAlgorithm::find;
    else if (rc.cv_algo == "tricked") opts.algorithm = CvAlgorithm::tricked;
    else throw ConfigError("unknown --cv-algo '" + rc.cv_algo + "'");
    if (opts.algorithm == CvAlgorithm::certify) {
      if (!rc.clist.empty()) opts.c_list = load_c_list(rc.clist);
      else if (rc.grid_t > 0) opts.c_list = grid_strategy(config, rc.grid_t);
    }
    const auto data = load_libsvm(rc.data, ParseOptions{rc.zero_one_labels});
    const Problem problem = cv_problem(data, opts, config);
    const auto r = run_cv(problem, opts);
    write_artifacts(rc, r, problem);
    report(log, r.certificate);
    return ok;
  }

  const Problem problem({holdout_fold(rc)}, config);
  if (mode == "certify") {
    std::vector<double> cs;
    if (!rc.clist.empty()) cs = load_c_list(rc.clist);
    else if (rc.grid_t > 0) cs = grid_strategy(config, rc.grid_t);
    else throw ConfigError("certify mode needs --clist or --grid-t");
    const auto r = certify_list(problem, cs);
    write_artifacts(rc, r, problem);
    if (rc.plot_data) {
      const auto curve = epsilon_curve(problem, cs.size());
      write_with(sibling_path(rc.out, ".epsilon_curve.csv"),
                 [&](std::ostream& o) { write_epsilon_curve_csv(o, curve); });
    }
    report(log, r.certificate);
  } else if (mode == "find" || mode == "find-tricked") {
    const auto r = mode == "find" ? find_approx_parameter(problem) : find_approx_parameter_tricked(problem);
    write_artifacts(rc, r, problem);
    report(log, r.certificate);
  } else if (mode == "path") {
    const auto path = track_path(problem);
    auto r = certify_trials(path.trials, problem, "path");
    r.certificate.solver.min_steps = path.forced_steps;
    write_artifacts(rc, r, problem);
    write_with(sibling_path(rc.out, ".path.csv"), [&](std::ostream& o) { write_path_csv(o, path, problem); });
    report(log, r.certificate);
    log << "path segments=" << path.trials.size() << " forced_steps=" << path.forced_steps << '\n';
  } else {
    throw ConfigError("unknown mode '" + mode + "'");
  }
  return ok;
}

}  // namespace

unsigned effective_threads(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* env = std::getenv("CERTREG_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
    return out.substr(0, out.size() - ext.size()) + suffix;
  return out + suffix;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    return run_checked(config, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const DataError& e) {
    log << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const SolverError& e) {
    log << "solver error: " << e.what() << '\n';
    return solver_error;
  }
}

int main(int argc, char** argv) {
  RunConfig rc;
  CLI::App app{"Certified choice of the regularization parameter for linear classifiers"};
  app.add_option("--mode", rc.mode, "certify | find | find-tricked | path | cv")
      ->check(CLI::IsMember({"certify", "find", "find-tricked", "path", "cv"}));
  app.add_option("--train", rc.train, "training set (libsvm format)");
  app.add_option("--valid", rc.valid, "validation set (libsvm format)");
  app.add_option("--data", rc.data, "single dataset, split by --holdout or --folds");
  app.add_option("--loss", rc.loss, "huber | hinge | logistic")->check(CLI::IsMember({"huber", "hinge", "logistic"}));
  app.add_option("--huber-width", rc.huber_width, "width of the quadratic part of the huber hinge");
  app.add_option("--c-min", rc.c_min, "lower end of the C range");
  app.add_option("--c-max", rc.c_max, "upper end of the C range");
  app.add_option("--eps", rc.eps, "target approximation level");
  app.add_option("--grid-m", rc.grid_m, "coarse grid size of the tricked search");
  app.add_option("--rho", rc.rho, "overstep factor of the tricked search");
  app.add_option("--folds", rc.folds, "number of CV folds");
  app.add_option("--seed", rc.seed, "seed for splits");
  app.add_flag("--exact", rc.exact, "solve to optimality instead of to the bound gap");
  app.add_option("--clist", rc.clist, "file of C values to certify");
  app.add_option("--out", rc.out, "certificate JSON path");
  app.add_flag("--plot-data", rc.plot_data, "also write CSV files for plotting next to --out");
  app.add_option("--grid-t", rc.grid_t, "certify a T-point log grid");
  app.add_option("--cv-algo", rc.cv_algo, "algorithm used in cv mode: certify | find | tricked")
      ->check(CLI::IsMember({"certify", "find", "tricked"}));
  app.add_flag("--zero-one-labels", rc.zero_one_labels, "read labels 0/1 as -1/+1");
  bool no_standardize = false;
  app.add_flag("--no-standardize", no_standardize, "keep features as given");
  app.add_option("--holdout", rc.holdout, "validation share when splitting --data");
  app.add_option("--threads", rc.threads, "parallel fold solves (0 = all cores)");
  app.add_option("--max-iterations", rc.max_iterations, "solver iteration limit per C");
  app.add_option("--min-step", rc.min_step, "smallest step of the searches");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }
  rc.standardize = !no_standardize;
  return run(rc, std::cerr);
}

}  // namespace certreg::cli

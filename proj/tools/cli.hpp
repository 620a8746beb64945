#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace certreg::cli {

enum ExitCode { ok = 0, config_error = 1, data_error = 2, solver_error = 3 };

struct RunConfig {
  std::string mode = "find";  // certify, find, find-tricked, path, cv
  std::string train;
  std::string valid;
  std::string data;
  std::string clist;
  std::string out = "certificate.json";
  std::string loss = "huber";
  double huber_width = 1.0;
  double c_min = 1e-3;
  double c_max = 1e3;
  double eps = 0.1;
  int grid_m = 4;
  double rho = 1.5;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  bool exact = false;
  bool plot_data = false;

  std::size_t grid_t = 0;         // certify over a T-point log grid
  std::string cv_algo = "find";   // certify, find, tricked
  bool zero_one_labels = false;
  bool standardize = true;
  double holdout = 0.5;           // validation share when only --data is given
  unsigned threads = 0;           // 0 = hardware, capped by CERTREG_THREADS
  int max_iterations = 1000;
  double min_step = 1e-6;
};

/// Runs one configuration, writes the artifacts and returns the exit code.
/// Diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

/// Thread count after applying the CERTREG_THREADS cap.
unsigned effective_threads(unsigned requested);

/// Output path with the ".json" suffix (if any) replaced by `suffix`.
std::string sibling_path(const std::string& out, const std::string& suffix);

int main(int argc, char** argv);

}  // namespace certreg::cli

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "certreg/io.hpp"
#include "cli.hpp"

using namespace certreg;
namespace fs = std::filesystem;

namespace {

const std::string kToy = std::string(CERTREG_TEST_DATA_DIR) + "/toy.libsvm";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("certreg-cli-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

cli::RunConfig toy_config(const TempDir& dir) {
  cli::RunConfig rc;
  rc.data = kToy;
  rc.out = dir.file("cert.json");
  rc.threads = 1;
  return rc;
}

int run(const cli::RunConfig& rc, std::string* log = nullptr) {
  std::ostringstream s;
  const int code = cli::run(rc, s);
  if (log != nullptr) *log = s.str();
  return code;
}

}  // namespace

TEST_CASE("find on the toy dataset") {
  TempDir dir;
  auto rc = toy_config(dir);
  rc.mode = "find";
  rc.eps = 0.1;
  std::string log;
  REQUIRE(run(rc, &log) == cli::ok);
  const auto cert = parse_certificate_json(slurp(rc.out));
  CHECK(cert.mode == "find");
  CHECK(cert.certified_epsilon <= 0.1);
  CHECK(log.find("certified_epsilon=") != std::string::npos);
}

TEST_CASE("every mode runs and output is deterministic") {
  for (const char* mode : {"find", "find-tricked", "path", "cv"}) {
    TempDir dir;
    auto rc = toy_config(dir);
    rc.mode = mode;
    rc.folds = 4;
    REQUIRE(run(rc) == cli::ok);
    const auto first = slurp(rc.out);
    REQUIRE(run(rc) == cli::ok);
    CHECK(slurp(rc.out) == first);
    CHECK(parse_certificate_json(first).mode == (std::string(mode) == "cv" ? "cv" : mode));
  }
}

TEST_CASE("certify with an external C list and plot data") {
  TempDir dir;
  const auto clist = dir.file("cs.txt");
  std::ofstream(clist) << "0.001\n0.1, 10\n1000\n";
  auto rc = toy_config(dir);
  rc.mode = "certify";
  rc.clist = clist;
  rc.plot_data = true;
  REQUIRE(run(rc) == cli::ok);
  const auto cert = parse_certificate_json(slurp(rc.out));
  REQUIRE(cert.solved.size() == 4);
  CHECK(cert.solved[1].c == 0.1);
  for (const char* suffix : {".lower.csv", ".upper.csv", ".points.csv", ".epsilon_curve.csv"}) {
    const auto path = cli::sibling_path(rc.out, suffix);
    INFO(path);
    CHECK(fs::exists(path));
  }
  CHECK(slurp(cli::sibling_path(rc.out, ".lower.csv")).rfind("C_breakpoint,", 0) == 0);
  CHECK(slurp(cli::sibling_path(rc.out, ".epsilon_curve.csv")).rfind("T,grid_epsilon", 0) == 0);
}

TEST_CASE("certify over a grid and path plot data") {
  TempDir dir;
  auto rc = toy_config(dir);
  rc.mode = "certify";
  rc.grid_t = 5;
  REQUIRE(run(rc) == cli::ok);
  CHECK(parse_certificate_json(slurp(rc.out)).solved.size() == 5);

  rc.mode = "path";
  rc.grid_t = 0;
  rc.out = dir.file("path.json");
  REQUIRE(run(rc) == cli::ok);
  CHECK(fs::exists(dir.file("path.path.csv")));
}

TEST_CASE("train and validation files") {
  TempDir dir;
  std::ifstream in(kToy);
  std::ofstream tr(dir.file("train.libsvm")), va(dir.file("valid.libsvm"));
  std::string line;
  for (int i = 0; std::getline(in, line); ++i) (i % 2 == 0 ? tr : va) << line << '\n';
  tr.close();
  va.close();
  cli::RunConfig rc;
  rc.train = dir.file("train.libsvm");
  rc.valid = dir.file("valid.libsvm");
  rc.out = dir.file("cert.json");
  CHECK(run(rc) == cli::ok);
}

TEST_CASE("config errors exit 1") {
  TempDir dir;
  auto rc = toy_config(dir);
  rc.mode = "certify";  // neither a C list nor a grid
  CHECK(run(rc) == cli::config_error);

  rc = toy_config(dir);
  rc.eps = 2.0;
  CHECK(run(rc) == cli::config_error);

  rc = toy_config(dir);
  rc.c_min = 10.0;
  rc.c_max = 1.0;
  CHECK(run(rc) == cli::config_error);

  rc = toy_config(dir);
  rc.train = kToy;  // --data together with --train
  CHECK(run(rc) == cli::config_error);

  rc = toy_config(dir);
  rc.mode = "bogus";
  CHECK(run(rc) == cli::config_error);
}

TEST_CASE("data errors exit 2 and name the file") {
  TempDir dir;
  cli::RunConfig rc;
  rc.train = dir.file("missing-train.libsvm");
  rc.valid = kToy;
  rc.out = dir.file("cert.json");
  std::string log;
  CHECK(run(rc, &log) == cli::data_error);
  CHECK(log.find(rc.train) != std::string::npos);

  const auto broken = dir.file("broken.libsvm");
  std::ofstream(broken) << "+1 1:1\n+1 1:oops\n";
  rc = toy_config(dir);
  rc.data = broken;
  CHECK(run(rc, &log) == cli::data_error);
  CHECK(log.find("line 2") != std::string::npos);
}

TEST_CASE("solver failures exit 3") {
  TempDir dir;
  auto rc = toy_config(dir);
  rc.exact = true;
  rc.max_iterations = 1;
  rc.c_max = 1e6;
  CHECK(run(rc) == cli::solver_error);
}

TEST_CASE("argument parsing") {
  TempDir dir;
  const std::string out = dir.file("cert.json");
  auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call({"certreg", "--data", kToy, "--out", out, "--eps", "0.2"}) == cli::ok);
  CHECK(fs::exists(out));
  CHECK(call({"certreg", "--no-such-flag"}) == cli::config_error);
  CHECK(call({"certreg", "--mode", "nonsense"}) == cli::config_error);
  CHECK(call({"certreg", "--data", kToy, "--out", out, "--eps", "abc"}) == cli::config_error);
  CHECK(call({"certreg", "--help"}) == cli::ok);
}

TEST_CASE("helpers") {
  CHECK(cli::sibling_path("run/cert.json", ".lower.csv") == "run/cert.lower.csv");
  CHECK(cli::sibling_path("cert", ".lower.csv") == "cert.lower.csv");
  CHECK(cli::effective_threads(3) <= 3);
  CHECK(cli::effective_threads(0) >= 1);
}

#ifdef CERTREG_CLI_PATH
TEST_CASE("installed binary") {
  TempDir dir;
  const std::string cmd = std::string(CERTREG_CLI_PATH) + " --data " + kToy + " --out " + dir.file("c.json") +
                          " --threads 1 2>/dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string missing = std::string(CERTREG_CLI_PATH) + " --train /nonexistent/a --valid /nonexistent/b --out " +
                              dir.file("d.json") + " 2>/dev/null";
  const int status = std::system(missing.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
#endif

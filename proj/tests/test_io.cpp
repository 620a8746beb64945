#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "certreg/error.hpp"
#include "certreg/io.hpp"
#include "support.hpp"

using namespace certreg;

namespace {

SearchResult sample_result(std::uint64_t seed, const std::string& which = "find") {
  std::mt19937_64 rng(seed);
  const auto f = certreg::testing::random_fold(rng, 20, 30);
  SearchConfig cfg;
  cfg.seed = seed;
  const Problem p({f}, cfg);
  if (which == "tricked") return find_approx_parameter_tricked(p);
  if (which == "path") return certify_trials(track_path(p).trials, p, "path");
  return find_approx_parameter(p);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("format_real keeps 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(1e-3) == "0.001");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS(format_real(std::numeric_limits<double>::infinity()));
}

TEST_CASE("certificate JSON has the documented keys in order") {
  const auto r = sample_result(1);
  const auto text = certificate_json(r.certificate);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"mode", "c_best", "ev_best", "certified_epsilon", "epsilon_target",
                                         "c_range", "solved", "lower_bound_path", "solver", "seed"});
  CHECK(j["c_range"].size() == 2);
  CHECK(j["solved"].size() == r.certificate.solved.size());
  const auto& first = j["solved"][0];
  CHECK(first.contains("c"));
  CHECK(first.contains("lb"));
  CHECK(first.contains("ub"));
  CHECK(first.contains("iterations"));
  CHECK(j["lower_bound_path"]["values"].size() == 2 * j["lower_bound_path"]["breakpoints"].size() + 1);
  CHECK(j["seed"].get<std::uint64_t>() == 1);
}

TEST_CASE("certificate JSON round trips") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const char* which : {"find", "tricked", "path"}) {
      const auto cert = sample_result(seed, which).certificate;
      const auto text = certificate_json(cert);
      const auto back = parse_certificate_json(text);
      CHECK(back == cert);
      CHECK(certificate_json(back) == text);
    }
  }
}

TEST_CASE("certificate JSON is byte-deterministic") {
  CHECK(certificate_json(sample_result(5).certificate) == certificate_json(sample_result(5).certificate));
  CHECK(certificate_json(sample_result(5, "tricked").certificate) ==
        certificate_json(sample_result(5, "tricked").certificate));
  std::ostringstream a, b;
  write_certificate_json(a, sample_result(6).certificate);
  write_certificate_json(b, sample_result(6).certificate);
  CHECK(a.str() == b.str());
}

TEST_CASE("malformed certificates are data errors") {
  CHECK_THROWS_AS(parse_certificate_json("{"), DataError);
  CHECK_THROWS_AS(parse_certificate_json("{}"), DataError);
  auto j = nlohmann::json::parse(certificate_json(sample_result(1).certificate));
  j.erase("solver");
  CHECK_THROWS_AS(parse_certificate_json(j.dump()), DataError);
}

TEST_CASE("CSV headers and row counts") {
  const auto r = sample_result(7);
  std::ostringstream stair;
  write_staircase_csv(stair, r.lower_bound);
  CHECK(first_line(stair.str()) == "C_breakpoint,value_left_of_breakpoint,value_right_of_breakpoint");
  CHECK(lines(stair.str()) == r.lower_bound.breakpoints().size() + 1);

  std::ostringstream pts;
  write_point_bounds_csv(pts, r.certificate);
  CHECK(first_line(pts.str()) == "C,lb,ub");
  CHECK(lines(pts.str()) == r.certificate.solved.size() + 1);

  const std::vector<EpsilonCurvePoint> curve{{1, 0.5, 0.5}, {2, 0.25, 0.2}};
  std::ostringstream eps;
  write_epsilon_curve_csv(eps, curve);
  CHECK(eps.str() == "T,grid_epsilon,bound_guided_epsilon\n1,0.5,0.5\n2,0.25,0.20000000000000001\n");

  std::mt19937_64 rng(8);
  const auto f = certreg::testing::random_fold(rng);
  const Problem p({f}, SearchConfig{});
  const auto path = track_path(p);
  std::ostringstream ps;
  write_path_csv(ps, path, p);
  CHECK(first_line(ps.str()) == "C_start,C_end,lb,ub,validation_error");
  CHECK(lines(ps.str()) == path.trials.size() + 1);
}

TEST_CASE("C lists") {
  std::istringstream in("0.001, 0.01\n1e-1 1\n\n10,100\n");
  CHECK(read_c_list(in) == std::vector<double>{0.001, 0.01, 0.1, 1.0, 10.0, 100.0});
  std::istringstream bad("1\n-2\n");
  try {
    read_c_list(bad);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream junk("1 abc\n");
  CHECK_THROWS_AS(read_c_list(junk), DataError);
  std::istringstream empty("\n");
  CHECK_THROWS_AS(read_c_list(empty), DataError);
  CHECK_THROWS_AS(load_c_list("/nonexistent/c.txt"), DataError);
}

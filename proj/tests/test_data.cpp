#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "certreg/data.hpp"
#include "certreg/error.hpp"
#include "support.hpp"

using namespace certreg;

namespace {

Dataset parse(const std::string& text, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_libsvm(in, opts);
}

std::string data_path(const char* name) { return std::string(CERTREG_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("parse a single instance") {
  const auto d = parse("+1 1:0.5 3:-1.0\n");
  REQUIRE(d.size() == 1);
  CHECK(d.dimension() >= 3);
  CHECK(d[0].label == 1);
  REQUIRE(d[0].features.size() == 2);
  CHECK(d[0].features[0] == Feature{1, 0.5});
  CHECK(d[0].features[1] == Feature{3, -1.0});
}

TEST_CASE("dimension is the max index over all lines") {
  const auto d = parse("-1 2:1.0\n+1 1:1.0\n");
  CHECK(d.size() == 2);
  CHECK(d.dimension() == 2);
  CHECK(d[0].label == -1);
}

TEST_CASE("CRLF and blank lines") {
  const auto d = parse("+1 1:1\r\n\r\n-1 2:2\r\n");
  CHECK(d.size() == 2);
  CHECK(d[1].features[0].value == 2.0);
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const DataError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("+1 1:1\n+1 2:x\n") == 2);
  CHECK(line_of("+1 3:1 2:1\n") == 1);  // non-increasing indices
  CHECK(line_of("+1 1:1 1:2\n") == 1);
  CHECK(line_of("+1 1:1\n# comment\n") == 2);
  CHECK(line_of("2 1:1\n") == 1);
  CHECK(line_of("0 1:1\n") == 1);
  CHECK_THROWS_AS(parse(""), DataError);
  CHECK_THROWS_AS(parse("\n\n"), DataError);
}

TEST_CASE("0/1 labels only with the flag") {
  const auto d = parse("0 1:1\n1 1:2\n", ParseOptions{true});
  CHECK(d[0].label == -1);
  CHECK(d[1].label == 1);
}

TEST_CASE("serialize round trip") {
  std::mt19937_64 rng(7);
  const auto d = testing::random_dataset(rng, 25, 6);
  std::ostringstream out;
  write_libsvm(out, d);
  const auto back = parse(out.str());
  CHECK(back == d);
  std::ostringstream again;
  write_libsvm(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("ionosphere shape") {
  const auto d = load_libsvm(data_path("ionosphere.libsvm"));
  CHECK(d.size() == 351);
  CHECK(d.dimension() == 34);
}

TEST_CASE("missing file names the path") {
  const std::string path = "/nonexistent/certreg-missing.libsvm";
  try {
    load_libsvm(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("standardize maps min/max onto -1/+1") {
  const Dataset col(std::vector<LabeledInstance>{{{{1, 0.0}}, 1}, {{{1, 5.0}}, -1}, {{{1, 10.0}}, 1}}, 1);
  const auto s = standardize(col);
  CHECK(dot(s[0].features, std::vector<double>{1.0}) == -1.0);
  CHECK(dot(s[1].features, std::vector<double>{1.0}) == 0.0);
  CHECK(dot(s[2].features, std::vector<double>{1.0}) == 1.0);

  const Dataset constant(std::vector<LabeledInstance>{{{{1, 3.0}}, 1}, {{{1, 3.0}}, -1}, {{{1, 3.0}}, 1}}, 1);
  for (const auto& inst : standardize(constant)) CHECK(dot(inst.features, std::vector<double>{1.0}) == 0.0);

  const Dataset two(std::vector<LabeledInstance>{{{{1, 0.0}, {2, 1.0}}, 1}, {{{1, 2.0}, {2, 3.0}}, -1}}, 2);
  const auto t = standardize(two);
  const std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0};
  CHECK(dot(t[0].features, e1) == -1.0);
  CHECK(dot(t[0].features, e2) == -1.0);
  CHECK(dot(t[1].features, e1) == 1.0);
  CHECK(dot(t[1].features, e2) == 1.0);
}

TEST_CASE("standardize is idempotent and uses train statistics") {
  std::mt19937_64 rng(11);
  const auto d = testing::random_dataset(rng, 40, 5);
  const auto once = standardize(d);
  const auto twice = standardize(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    for (std::uint32_t j = 1; j <= 5; ++j) {
      std::vector<double> e(5, 0.0);
      e[j - 1] = 1.0;
      CHECK(std::abs(dot(once[i].features, e) - dot(twice[i].features, e)) <= 1e-12);
    }
  }
  // Validation values may leave [-1, 1] under train statistics.
  const Dataset train(std::vector<LabeledInstance>{{{{1, 0.0}}, 1}, {{{1, 1.0}}, -1}}, 1);
  const Dataset valid(std::vector<LabeledInstance>{{{{1, 2.0}}, 1}}, 1);
  const auto s = Standardizer::fit(train);
  CHECK(dot(s.apply(valid)[0].features, std::vector<double>{1.0}) == 3.0);
}

TEST_CASE("fold sizes follow the almost-equal rule") {
  CHECK(fold_sizes(10, 3) == std::vector<std::size_t>{4, 3, 3});
  const auto sizes = fold_sizes(351, 10);
  CHECK(sizes.front() == 36);
  CHECK(std::count(sizes.begin(), sizes.end(), 35) == 9);
}

TEST_CASE("kfold partition is disjoint and covering") {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto parts = kfold_partition(37, 5, seed);
    REQUIRE(parts.size() == 5);
    std::set<std::size_t> all;
    std::size_t total = 0;
    for (const auto& p : parts) {
      total += p.size();
      all.insert(p.begin(), p.end());
    }
    CHECK(total == 37);
    CHECK(all.size() == 37);
    CHECK(*all.rbegin() == 36);
  }
  CHECK(kfold_partition(37, 5, 3) == kfold_partition(37, 5, 3));
}

TEST_CASE("split modes") {
  std::mt19937_64 rng(3);
  const auto d = testing::random_dataset(rng, 10, 3);
  SplitSpec holdout;
  for (std::uint64_t seed : {0u, 5u}) {
    holdout.seed = seed;
    const auto f = split(d, holdout);
    REQUIRE(f.size() == 1);
    CHECK(f[0].train.size() == 5);
    CHECK(f[0].validation.size() == 5);
  }
  SplitSpec k3;
  k3.mode = SplitSpec::Mode::kfold;
  k3.k = 3;
  const auto folds = split(d, k3);
  REQUIRE(folds.size() == 3);
  std::vector<std::size_t> valid_sizes;
  for (const auto& f : folds) {
    CHECK(f.train.size() + f.validation.size() == 10);
    valid_sizes.push_back(f.validation.size());
  }
  std::sort(valid_sizes.rbegin(), valid_sizes.rend());
  CHECK(valid_sizes == std::vector<std::size_t>{4, 3, 3});

  SplitSpec too_many = k3;
  too_many.k = 11;
  CHECK_THROWS(split(d, too_many));
}

TEST_CASE("all-zero validation inputs are rejected") {
  const Dataset v(std::vector<LabeledInstance>{{{{1, 1.0}}, 1}, {{}, -1}}, 1);
  CHECK_THROWS_AS(check_validation_inputs(v), DataError);
  const Dataset zero_value(std::vector<LabeledInstance>{{{{1, 0.0}}, 1}}, 1);
  CHECK_THROWS_AS(check_validation_inputs(zero_value), DataError);
}

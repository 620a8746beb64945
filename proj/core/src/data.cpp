#include "certreg/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string_view>

#include "certreg/error.hpp"

namespace certreg {

double dot(const SparseVector& x, std::span<const double> dense) {
  double s = 0.0;
  for (const auto& f : x) {
    if (f.index <= dense.size()) s += f.value * dense[f.index - 1];
  }
  return s;
}

double squared_norm(const SparseVector& x) {
  double s = 0.0;
  for (const auto& f : x) s += f.value * f.value;
  return s;
}

double norm(const SparseVector& x) { return std::sqrt(squared_norm(x)); }

namespace {

void validate_instance(const LabeledInstance& inst, std::size_t line) {
  if (inst.label != 1 && inst.label != -1) throw DataError("label must be -1 or +1", line);
  for (std::size_t j = 0; j < inst.features.size(); ++j) {
    if (inst.features[j].index == 0) throw DataError("feature index must be >= 1", line);
    if (j > 0 && inst.features[j].index <= inst.features[j - 1].index)
      throw DataError("feature indices must be strictly increasing", line);
    if (!std::isfinite(inst.features[j].value)) throw DataError("non-finite feature value", line);
  }
}

std::size_t max_index(const std::vector<LabeledInstance>& instances) {
  std::size_t d = 0;
  for (const auto& inst : instances) {
    if (!inst.features.empty()) d = std::max<std::size_t>(d, inst.features.back().index);
  }
  return d;
}

}  // namespace

Dataset::Dataset(std::vector<LabeledInstance> instances, std::size_t dimension)
    : instances_(std::move(instances)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) validate_instance(instances_[i], 0);
  const std::size_t observed = max_index(instances_);
  if (dimension != 0 && dimension < observed)
    throw DataError("declared dimension " + std::to_string(dimension) +
                    " is below the largest feature index " + std::to_string(observed));
  dimension_ = std::max(dimension, observed);
}

Dataset Dataset::with_dimension(std::size_t d) const {
  Dataset out = *this;
  out.dimension_ = std::max(dimension_, d);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<LabeledInstance> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(instances_.at(i));
  Dataset out(std::move(picked), 0);
  out.dimension_ = dimension_;
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view tok, double& out) {
  // std::from_chars rejects a leading '+', libsvm files commonly use "+1".
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

LabeledInstance parse_line(std::string_view line, std::size_t lineno, const ParseOptions& options) {
  LabeledInstance inst;
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string_view {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    return line.substr(start, pos - start);
  };

  const auto label_tok = next_token();
  double label = 0.0;
  if (!parse_double(label_tok, label))
    throw DataError("cannot parse label '" + std::string(label_tok) + "'", lineno);
  if (label == 1.0) {
    inst.label = 1;
  } else if (label == -1.0 && !options.zero_one_labels) {
    inst.label = -1;
  } else if (label == 0.0 && options.zero_one_labels) {
    inst.label = -1;
  } else {
    throw DataError("unsupported label '" + std::string(label_tok) + "'", lineno);
  }

  for (auto tok = next_token(); !tok.empty(); tok = next_token()) {
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw DataError("expected idx:val, got '" + std::string(tok) + "'", lineno);
    std::uint32_t idx = 0;
    const auto idx_part = tok.substr(0, colon);
    const auto [p, ec] = std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), idx);
    if (ec != std::errc() || p != idx_part.data() + idx_part.size() || idx == 0)
      throw DataError("bad feature index '" + std::string(idx_part) + "'", lineno);
    double value = 0.0;
    if (!parse_double(tok.substr(colon + 1), value))
      throw DataError("bad feature value in '" + std::string(tok) + "'", lineno);
    if (!inst.features.empty() && idx <= inst.features.back().index)
      throw DataError("feature indices must be strictly increasing", lineno);
    inst.features.push_back({idx, value});
  }
  validate_instance(inst, lineno);
  return inst;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const ParseOptions& options) {
  std::vector<LabeledInstance> instances;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') throw DataError("comments are not supported", lineno);
    instances.push_back(parse_line(line, lineno, options));
  }
  if (instances.empty()) throw DataError("no instances in input");
  return Dataset(std::move(instances));
}

Dataset load_libsvm(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  try {
    return parse_libsvm(in, options);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  char buf[64];
  for (const auto& inst : data) {
    out << (inst.label > 0 ? "+1" : "-1");
    for (const auto& f : inst.features) {
      std::snprintf(buf, sizeof buf, "%.17g", f.value);
      out << ' ' << f.index << ':' << buf;
    }
    out << '\n';
  }
}

Standardizer Standardizer::fit(const Dataset& data) {
  if (data.empty()) throw DataError("cannot standardize an empty dataset");
  const std::size_t d = data.dimension();
  Standardizer s;
  s.min_.assign(d, std::numeric_limits<double>::infinity());
  s.max_.assign(d, -std::numeric_limits<double>::infinity());
  // Absent entries are zeros; count them through per-column occupancy.
  std::vector<std::size_t> present(d, 0);
  for (const auto& inst : data) {
    for (const auto& f : inst.features) {
      const std::size_t c = f.index - 1;
      s.min_[c] = std::min(s.min_[c], f.value);
      s.max_[c] = std::max(s.max_[c], f.value);
      ++present[c];
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    if (present[c] < data.size()) {
      s.min_[c] = std::min(s.min_[c], 0.0);
      s.max_[c] = std::max(s.max_[c], 0.0);
    }
  }
  return s;
}

double Standardizer::transform(std::size_t column, double value) const {
  if (column >= min_.size()) return 0.0;
  const double lo = min_[column];
  const double hi = max_[column];
  if (!(hi > lo)) return 0.0;
  return 2.0 * (value - lo) / (hi - lo) - 1.0;
}

Dataset Standardizer::apply(const Dataset& data) const {
  const std::size_t d = std::max(data.dimension(), dimension());
  std::vector<LabeledInstance> out;
  out.reserve(data.size());
  std::vector<double> dense(d);
  for (const auto& inst : data) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (const auto& f : inst.features) dense[f.index - 1] = f.value;
    LabeledInstance r;
    r.label = inst.label;
    for (std::size_t c = 0; c < d; ++c) {
      const double v = transform(c, dense[c]);
      if (v != 0.0) r.features.push_back({static_cast<std::uint32_t>(c + 1), v});
    }
    out.push_back(std::move(r));
  }
  return Dataset(std::move(out), d);
}

Dataset standardize(const Dataset& data) { return Standardizer::fit(data).apply(data); }

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Explicit Fisher-Yates: std::shuffle's output is library-specific.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

std::vector<std::size_t> fold_sizes(std::size_t n, std::size_t k) {
  if (k == 0) throw ConfigError("k must be positive");
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k,
                                                      std::uint64_t seed) {
  if (k < 2) throw ConfigError("k-fold CV needs k >= 2");
  if (k > n) throw ConfigError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  const auto order = shuffled_indices(n, seed);
  const auto sizes = fold_sizes(n, k);
  std::vector<std::vector<std::size_t>> parts(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    parts[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + sizes[f]));
    std::sort(parts[f].begin(), parts[f].end());
    pos += sizes[f];
  }
  return parts;
}

void check_validation_inputs(const Dataset& validation) {
  for (std::size_t i = 0; i < validation.size(); ++i) {
    const auto& fs = validation[i].features;
    const bool all_zero =
        std::all_of(fs.begin(), fs.end(), [](const Feature& f) { return f.value == 0.0; });
    if (all_zero)
      throw DataError("validation instance " + std::to_string(i) + " has an all-zero input vector");
  }
}

std::vector<Fold> split(const Dataset& data, const SplitSpec& spec) {
  const std::size_t n = data.size();
  std::vector<Fold> folds;
  if (spec.mode == SplitSpec::Mode::holdout) {
    if (!(spec.holdout_fraction > 0.0 && spec.holdout_fraction < 1.0))
      throw ConfigError("holdout fraction must lie in (0, 1)");
    if (n < 2) throw ConfigError("holdout split needs at least 2 instances");
    auto n_valid = static_cast<std::size_t>(std::llround(spec.holdout_fraction * static_cast<double>(n)));
    n_valid = std::clamp<std::size_t>(n_valid, 1, n - 1);
    auto order = shuffled_indices(n, spec.seed);
    std::vector<std::size_t> valid(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_valid));
    std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_valid), order.end());
    std::sort(valid.begin(), valid.end());
    std::sort(train.begin(), train.end());
    folds.push_back({data.subset(train), data.subset(valid)});
  } else {
    const auto parts = kfold_partition(n, spec.k, spec.seed);
    for (std::size_t f = 0; f < parts.size(); ++f) {
      std::vector<std::size_t> train;
      train.reserve(n - parts[f].size());
      for (std::size_t g = 0; g < parts.size(); ++g) {
        if (g != f) train.insert(train.end(), parts[g].begin(), parts[g].end());
      }
      std::sort(train.begin(), train.end());
      folds.push_back({data.subset(train), data.subset(parts[f])});
    }
  }
  for (const auto& fold : folds) check_validation_inputs(fold.validation);
  return folds;
}

std::vector<Fold> standardize_folds(const std::vector<Fold>& folds) {
  std::vector<Fold> out;
  out.reserve(folds.size());
  for (const auto& fold : folds) {
    const auto s = Standardizer::fit(fold.train);
    Fold f{s.apply(fold.train), s.apply(fold.validation)};
    check_validation_inputs(f.validation);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace certreg

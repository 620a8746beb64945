#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace certreg {

struct Feature {
  std::uint32_t index;  // 1-based
  double value;

  friend bool operator==(const Feature&, const Feature&) = default;
};

using SparseVector = std::vector<Feature>;

/// Sparse dot product against a dense vector indexed from 0
/// (feature index i maps to dense[i - 1]).
double dot(const SparseVector& x, std::span<const double> dense);
double squared_norm(const SparseVector& x);
double norm(const SparseVector& x);

struct LabeledInstance {
  SparseVector features;  // strictly increasing indices
  int label = 1;          // -1 or +1

  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

/// Immutable-after-construction list of labeled instances.
class Dataset {
 public:
  Dataset() = default;
  /// Validates labels, index order and `dimension >= max index`.
  /// A dimension of 0 means "use the max observed index".
  explicit Dataset(std::vector<LabeledInstance> instances, std::size_t dimension = 0);

  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const LabeledInstance& operator[](std::size_t i) const { return instances_[i]; }
  const std::vector<LabeledInstance>& instances() const noexcept { return instances_; }
  auto begin() const noexcept { return instances_.begin(); }
  auto end() const noexcept { return instances_.end(); }

  /// Same instances, declared dimension raised to `d` (never lowered).
  Dataset with_dimension(std::size_t d) const;
  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<LabeledInstance> instances_;
  std::size_t dimension_ = 0;
};

struct ParseOptions {
  /// Accept labels {0, 1} and map 0 to -1.
  bool zero_one_labels = false;
};

/// Parses libsvm text ("label idx:val idx:val ..."). LF or CRLF line ends.
/// Blank lines are skipped; '#' comments are rejected.
Dataset parse_libsvm(std::istream& in, const ParseOptions& options = {});
Dataset load_libsvm(const std::string& path, const ParseOptions& options = {});
void write_libsvm(std::ostream& out, const Dataset& data);

/// Per-column affine map onto [-1, 1] fitted on one dataset and applied to
/// others. Columns whose observed min equals max map to 0.
class Standardizer {
 public:
  static Standardizer fit(const Dataset& data);

  Dataset apply(const Dataset& data) const;
  double transform(std::size_t column, double value) const;

  std::size_t dimension() const noexcept { return min_.size(); }
  const std::vector<double>& column_min() const noexcept { return min_; }
  const std::vector<double>& column_max() const noexcept { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

/// Fits on `data` and returns the rescaled copy.
Dataset standardize(const Dataset& data);

struct Fold {
  Dataset train;
  Dataset validation;
};

struct SplitSpec {
  enum class Mode { holdout, kfold };
  Mode mode = Mode::holdout;
  double holdout_fraction = 0.5;  // fraction assigned to validation
  std::size_t k = 10;
  std::uint64_t seed = 0;
};

/// Deterministic permutation of [0, n) for a seed.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

/// Fold sizes for n items in k almost-equal parts; the first n % k folds get
/// one extra item.
std::vector<std::size_t> fold_sizes(std::size_t n, std::size_t k);

/// Index partition for k-fold CV, disjoint and covering [0, n).
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k,
                                                      std::uint64_t seed);

/// Holdout mode yields one fold, kfold mode yields k folds where fold κ
/// validates on partition κ and trains on the rest. Validation instances
/// with an all-zero feature vector are rejected.
std::vector<Fold> split(const Dataset& data, const SplitSpec& spec);

/// Rescales every fold with statistics of its own training part.
std::vector<Fold> standardize_folds(const std::vector<Fold>& folds);

/// Throws DataError if any instance has no non-zero feature.
void check_validation_inputs(const Dataset& validation);

}  // namespace certreg

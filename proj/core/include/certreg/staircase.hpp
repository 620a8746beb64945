#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace certreg {

/// Half-line C > 0 split at sorted breakpoints b_0 < ... < b_{m-1}, with an
/// integer count on every open segment (m + 1 of them, the first starting at
/// 0 and the last running to infinity) and on every breakpoint itself.
///
/// For lower bounds the count is the number of validation instances that are
/// guaranteed misclassified and the value is count / total. For upper bounds
/// it is the number guaranteed correct and the value is 1 - count / total.
class StaircaseBound {
 public:
  enum class Direction { lower, upper };

  struct Interval {
    double lo = 0.0;
    double hi = 0.0;  // may be +infinity
    bool lo_closed = false;
    bool hi_closed = false;
  };

  StaircaseBound() = default;
  StaircaseBound(std::vector<double> breakpoints, std::vector<std::size_t> segment_counts,
                 std::vector<std::size_t> point_counts, std::size_t total, Direction direction);

  /// Count at C = number of intervals containing C.
  static StaircaseBound from_intervals(std::span<const Interval> intervals, std::size_t total,
                                       Direction direction);
  /// Constant zero-count staircase.
  static StaircaseBound zero(std::size_t total, Direction direction);
  /// Pointwise maximum of the counts; all inputs share total and direction.
  static StaircaseBound pointwise_max(std::span<const StaircaseBound> parts);
  /// Pointwise sum of counts and totals; all inputs share direction.
  static StaircaseBound sum(std::span<const StaircaseBound> parts);

  std::size_t count_at(double c) const;
  double value_at(double c) const;
  double value_of(std::size_t count) const;

  /// Where the count attains its minimum over the closed range [lo, hi].
  /// Ties go to the leftmost piece. `piece_lo == piece_hi` for a point.
  struct Extremum {
    std::size_t count = 0;
    double piece_lo = 0.0;
    double piece_hi = 0.0;
    bool is_point = false;
  };
  Extremum min_count_over(double lo, double hi) const;
  Extremum max_count_over(double lo, double hi) const;

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<std::size_t>& segment_counts() const noexcept { return segment_counts_; }
  const std::vector<std::size_t>& point_counts() const noexcept { return point_counts_; }
  std::size_t total() const noexcept { return total_; }
  Direction direction() const noexcept { return direction_; }

 private:
  template <typename Better>
  Extremum extremum_over(double lo, double hi, Better better) const;

  std::vector<double> breakpoints_;
  std::vector<std::size_t> segment_counts_{0};
  std::vector<std::size_t> point_counts_;
  std::size_t total_ = 0;
  Direction direction_ = Direction::lower;
};

}  // namespace certreg

#include "certreg/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "certreg/error.hpp"

namespace certreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t index_of(const std::vector<double>& sorted, double v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

// Drops breakpoints whose point count equals both neighbouring segments.
void compress(std::vector<double>& bp, std::vector<std::size_t>& seg, std::vector<std::size_t>& pt) {
  std::vector<double> nbp;
  std::vector<std::size_t> nseg{seg.front()};
  std::vector<std::size_t> npt;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    if (pt[j] == nseg.back() && seg[j + 1] == nseg.back()) continue;
    nbp.push_back(bp[j]);
    npt.push_back(pt[j]);
    nseg.push_back(seg[j + 1]);
  }
  bp = std::move(nbp);
  seg = std::move(nseg);
  pt = std::move(npt);
}

}  // namespace

StaircaseBound::StaircaseBound(std::vector<double> breakpoints, std::vector<std::size_t> segment_counts,
                               std::vector<std::size_t> point_counts, std::size_t total,
                               Direction direction)
    : breakpoints_(std::move(breakpoints)),
      segment_counts_(std::move(segment_counts)),
      point_counts_(std::move(point_counts)),
      total_(total),
      direction_(direction) {
  if (segment_counts_.size() != breakpoints_.size() + 1 || point_counts_.size() != breakpoints_.size())
    throw std::invalid_argument("staircase: counts do not match breakpoints");
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end())
    throw std::invalid_argument("staircase: breakpoints must be strictly increasing");
  auto over = [this](std::size_t n) { return n > total_; };
  if (std::any_of(segment_counts_.begin(), segment_counts_.end(), over) ||
      std::any_of(point_counts_.begin(), point_counts_.end(), over))
    throw std::invalid_argument("staircase: count exceeds total");
}

StaircaseBound StaircaseBound::zero(std::size_t total, Direction direction) {
  return StaircaseBound({}, {0}, {}, total, direction);
}

StaircaseBound StaircaseBound::from_intervals(std::span<const Interval> intervals, std::size_t total,
                                              Direction direction) {
  std::vector<double> bp;
  bp.reserve(2 * intervals.size());
  for (const auto& iv : intervals) {
    if (iv.lo > 0.0 && std::isfinite(iv.lo)) bp.push_back(iv.lo);
    if (iv.hi > 0.0 && std::isfinite(iv.hi)) bp.push_back(iv.hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const std::size_t m = bp.size();

  std::vector<std::ptrdiff_t> seg_diff(m + 2, 0);
  std::vector<std::ptrdiff_t> pt_diff(m + 1, 0);
  for (const auto& iv : intervals) {
    if (!(iv.hi > 0.0)) continue;
    const bool from_zero = !(iv.lo > 0.0);
    const bool to_inf = iv.hi == kInf;
    const std::size_t lo_i = from_zero ? 0 : index_of(bp, iv.lo);
    const std::size_t hi_i = to_inf ? m : index_of(bp, iv.hi);

    const std::size_t s_begin = from_zero ? 0 : lo_i + 1;
    const std::size_t s_end = hi_i;  // inclusive
    if (s_begin <= s_end) {
      ++seg_diff[s_begin];
      --seg_diff[s_end + 1];
    }

    const std::ptrdiff_t p_begin =
        from_zero ? 0 : static_cast<std::ptrdiff_t>(lo_i) + (iv.lo_closed ? 0 : 1);
    const std::ptrdiff_t p_end =
        to_inf ? static_cast<std::ptrdiff_t>(m) - 1
               : static_cast<std::ptrdiff_t>(hi_i) - (iv.hi_closed ? 0 : 1);
    if (p_begin <= p_end) {
      ++pt_diff[static_cast<std::size_t>(p_begin)];
      --pt_diff[static_cast<std::size_t>(p_end) + 1];
    }
  }

  std::vector<std::size_t> seg(m + 1);
  std::vector<std::size_t> pt(m);
  std::ptrdiff_t run = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    run += seg_diff[j];
    seg[j] = static_cast<std::size_t>(run);
  }
  run = 0;
  for (std::size_t j = 0; j < m; ++j) {
    run += pt_diff[j];
    pt[j] = static_cast<std::size_t>(run);
  }
  compress(bp, seg, pt);
  return StaircaseBound(std::move(bp), std::move(seg), std::move(pt), total, direction);
}

namespace {

template <typename Combine>
StaircaseBound combine(std::span<const StaircaseBound> parts, std::size_t total,
                       StaircaseBound::Direction direction, Combine op) {
  std::vector<double> bp;
  for (const auto& p : parts) bp.insert(bp.end(), p.breakpoints().begin(), p.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const std::size_t m = bp.size();

  std::vector<std::size_t> seg(m + 1, 0);
  std::vector<std::size_t> pt(m, 0);
  bool first = true;
  for (const auto& p : parts) {
    const auto& own = p.breakpoints();
    std::size_t k = 0;  // own breakpoints strictly below the current union point
    auto take = [&](std::size_t& slot, std::size_t v) { slot = first ? v : op(slot, v); };
    take(seg[0], p.segment_counts()[0]);
    for (std::size_t j = 0; j < m; ++j) {
      while (k < own.size() && own[k] < bp[j]) ++k;
      const bool hit = k < own.size() && own[k] == bp[j];
      take(pt[j], hit ? p.point_counts()[k] : p.segment_counts()[k]);
      take(seg[j + 1], p.segment_counts()[hit ? k + 1 : k]);
    }
    first = false;
  }
  compress(bp, seg, pt);
  return StaircaseBound(std::move(bp), std::move(seg), std::move(pt), total, direction);
}

}  // namespace

StaircaseBound StaircaseBound::pointwise_max(std::span<const StaircaseBound> parts) {
  if (parts.empty()) throw std::invalid_argument("pointwise_max of no staircases");
  for (const auto& p : parts) {
    if (p.total() != parts[0].total() || p.direction() != parts[0].direction())
      throw std::invalid_argument("pointwise_max: mismatched staircases");
  }
  return combine(parts, parts[0].total(), parts[0].direction(),
                 [](std::size_t a, std::size_t b) { return std::max(a, b); });
}

StaircaseBound StaircaseBound::sum(std::span<const StaircaseBound> parts) {
  if (parts.empty()) throw std::invalid_argument("sum of no staircases");
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.direction() != parts[0].direction()) throw std::invalid_argument("sum: mismatched directions");
    total += p.total();
  }
  return combine(parts, total, parts[0].direction(), [](std::size_t a, std::size_t b) { return a + b; });
}

std::size_t StaircaseBound::count_at(double c) const {
  const std::size_t j = index_of(breakpoints_, c);
  if (j < breakpoints_.size() && breakpoints_[j] == c) return point_counts_[j];
  return segment_counts_[j];
}

double StaircaseBound::value_of(std::size_t count) const {
  if (total_ == 0) return direction_ == Direction::lower ? 0.0 : 1.0;
  const double frac = static_cast<double>(count) / static_cast<double>(total_);
  return direction_ == Direction::lower ? frac : 1.0 - frac;
}

double StaircaseBound::value_at(double c) const { return value_of(count_at(c)); }

template <typename Better>
StaircaseBound::Extremum StaircaseBound::extremum_over(double lo, double hi, Better better) const {
  if (!(lo <= hi)) throw ConfigError("empty range for staircase extremum");
  Extremum best{count_at(lo), lo, lo, true};
  auto offer = [&](std::size_t count, double a, double b, bool point) {
    if (better(count, best.count)) best = Extremum{count, a, b, point};
  };
  if (lo < hi) {
    std::size_t j = index_of(breakpoints_, lo);
    if (j < breakpoints_.size() && breakpoints_[j] == lo) ++j;
    // segment j now contains values just above lo
    for (;; ++j) {
      const double seg_lo = j == 0 ? 0.0 : breakpoints_[j - 1];
      const double seg_hi = j < breakpoints_.size() ? breakpoints_[j] : kInf;
      offer(segment_counts_[j], std::max(seg_lo, lo), std::min(seg_hi, hi), false);
      if (seg_hi >= hi) break;
      offer(point_counts_[j], seg_hi, seg_hi, true);
    }
    offer(count_at(hi), hi, hi, true);
  }
  return best;
}

StaircaseBound::Extremum StaircaseBound::min_count_over(double lo, double hi) const {
  return extremum_over(lo, hi, [](std::size_t a, std::size_t b) { return a < b; });
}

StaircaseBound::Extremum StaircaseBound::max_count_over(double lo, double hi) const {
  return extremum_over(lo, hi, [](std::size_t a, std::size_t b) { return a > b; });
}

}  // namespace certreg

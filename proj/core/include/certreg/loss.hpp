#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "certreg/data.hpp"

namespace certreg {

/// Margin-based convex loss l(y, z) with z = w^T x.
///
/// huber_hinge, written in terms of the margin m = y z and width h > 0:
///
///     l = 0                    if m >= 1
///     l = (1 - m)^2 / (2 h)    if 1 - h < m < 1
///     l = 1 - m - h / 2        if m <= 1 - h
///
/// hinge:    l = max(0, 1 - m)
/// logistic: l = log(1 + exp(-m))
struct LossKind {
  enum class Variant { huber_hinge, hinge, logistic };

  Variant variant = Variant::huber_hinge;
  double huber_width = 1.0;

  bool differentiable() const noexcept { return variant != Variant::hinge; }

  static LossKind huber(double width = 1.0) { return {Variant::huber_hinge, width}; }
  static LossKind hinge() { return {Variant::hinge, 1.0}; }
  static LossKind logistic() { return {Variant::logistic, 1.0}; }
};

LossKind parse_loss_kind(std::string_view name, double huber_width = 1.0);
std::string_view to_string(LossKind::Variant v);

double loss_value(const LossKind& kind, int y, double z);

/// Canonical element of the subdifferential in z. Hinge returns 0 at the
/// kink (y z == 1).
double loss_subgradient(const LossKind& kind, int y, double z);

/// Second derivative in z, or the generalized one for huber_hinge
/// (1/h inside the quadratic piece). Zero for hinge.
double loss_curvature(const LossKind& kind, int y, double z);

/// loss_value(z_new) - loss_value(z_old), computed without the cancellation
/// of subtracting two nearly equal values.
double loss_difference(const LossKind& kind, int y, double z_old, double z_new);

/// Value and subgradient g = w + C sum_i xi_i(w) of
/// 0.5 ||w||^2 + C sum_i l(y_i, w^T x_i).
struct ObjectiveState {
  std::vector<double> weights;
  double c = 1.0;
  double objective_value = 0.0;
  std::vector<double> subgradient;
  double subgradient_norm = 0.0;
};

/// Throws SolverError on non-finite weights; `w.size()` must equal the
/// training dimension. Summation order is the dataset order.
ObjectiveState objective_and_subgradient(const LossKind& kind, const Dataset& train,
                                         std::span<const double> w, double c);

double objective_value(const LossKind& kind, const Dataset& train, std::span<const double> w,
                       double c);

}  // namespace certreg

#include "certreg/loss.hpp"

#include <cmath>

#include "certreg/error.hpp"

namespace certreg {

LossKind parse_loss_kind(std::string_view name, double huber_width) {
  if (name == "huber" || name == "huber_hinge") {
    if (!(huber_width > 0.0)) throw ConfigError("huber width must be positive");
    return LossKind::huber(huber_width);
  }
  if (name == "hinge") return LossKind::hinge();
  if (name == "logistic") return LossKind::logistic();
  throw ConfigError("unknown loss '" + std::string(name) + "'");
}

std::string_view to_string(LossKind::Variant v) {
  switch (v) {
    case LossKind::Variant::huber_hinge: return "huber";
    case LossKind::Variant::hinge: return "hinge";
    case LossKind::Variant::logistic: return "logistic";
  }
  return "?";
}

double loss_value(const LossKind& kind, int y, double z) {
  const double m = y * z;
  switch (kind.variant) {
    case LossKind::Variant::huber_hinge: {
      const double h = kind.huber_width;
      if (m >= 1.0) return 0.0;
      if (m > 1.0 - h) return (1.0 - m) * (1.0 - m) / (2.0 * h);
      return 1.0 - m - 0.5 * h;
    }
    case LossKind::Variant::hinge:
      return m >= 1.0 ? 0.0 : 1.0 - m;
    case LossKind::Variant::logistic:
      return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }
  return 0.0;
}

double loss_subgradient(const LossKind& kind, int y, double z) {
  const double m = y * z;
  double dm = 0.0;  // derivative with respect to the margin
  switch (kind.variant) {
    case LossKind::Variant::huber_hinge: {
      const double h = kind.huber_width;
      if (m >= 1.0) dm = 0.0;
      else if (m > 1.0 - h) dm = -(1.0 - m) / h;
      else dm = -1.0;
      break;
    }
    case LossKind::Variant::hinge:
      dm = m < 1.0 ? -1.0 : 0.0;
      break;
    case LossKind::Variant::logistic:
      dm = -1.0 / (1.0 + std::exp(m));
      break;
  }
  return y * dm;
}

double loss_curvature(const LossKind& kind, int y, double z) {
  const double m = y * z;
  switch (kind.variant) {
    case LossKind::Variant::huber_hinge: {
      const double h = kind.huber_width;
      return (m < 1.0 && m > 1.0 - h) ? 1.0 / h : 0.0;
    }
    case LossKind::Variant::hinge:
      return 0.0;
    case LossKind::Variant::logistic: {
      const double s = 1.0 / (1.0 + std::exp(-m));
      return s * (1.0 - s);
    }
  }
  return 0.0;
}

double loss_difference(const LossKind& kind, int y, double z_old, double z_new) {
  const double a = y * z_old;
  const double b = y * z_new;
  switch (kind.variant) {
    case LossKind::Variant::huber_hinge: {
      const double h = kind.huber_width;
      auto piece = [h](double m) { return m >= 1.0 ? 0 : (m > 1.0 - h ? 1 : 2); };
      const int pa = piece(a);
      if (pa == piece(b)) {
        if (pa == 0) return 0.0;
        if (pa == 2) return a - b;
        return (a - b) * (2.0 - a - b) / (2.0 * h);
      }
      break;
    }
    case LossKind::Variant::hinge:
      if ((a >= 1.0) == (b >= 1.0)) return a >= 1.0 ? 0.0 : a - b;
      break;
    case LossKind::Variant::logistic: {
      // softplus(-b) - softplus(-a) = log1p(sigmoid(-a) expm1(a - b))
      if (std::abs(a - b) < 30.0) {
        const double s = a > 0.0 ? std::exp(-a) / (1.0 + std::exp(-a)) : 1.0 / (1.0 + std::exp(a));
        return std::log1p(s * std::expm1(a - b));
      }
      break;
    }
  }
  return loss_value(kind, y, z_new) - loss_value(kind, y, z_old);
}

namespace {

void check_weights(std::span<const double> w) {
  for (double v : w) {
    if (!std::isfinite(v)) throw SolverError("non-finite weight vector");
  }
}

}  // namespace

ObjectiveState objective_and_subgradient(const LossKind& kind, const Dataset& train,
                                         std::span<const double> w, double c) {
  if (!(c > 0.0)) throw ConfigError("regularization parameter must be positive");
  check_weights(w);
  ObjectiveState s;
  s.c = c;
  s.weights.assign(w.begin(), w.end());
  s.subgradient.assign(w.begin(), w.end());

  double reg = 0.0;
  for (double v : w) reg += v * v;
  double loss_sum = 0.0;
  for (const auto& inst : train) {
    const double z = dot(inst.features, w);
    loss_sum += loss_value(kind, inst.label, z);
    const double xi = loss_subgradient(kind, inst.label, z);
    if (xi != 0.0) {
      for (const auto& f : inst.features) {
        if (f.index <= w.size()) s.subgradient[f.index - 1] += c * xi * f.value;
      }
    }
  }
  s.objective_value = 0.5 * reg + c * loss_sum;
  double g2 = 0.0;
  for (double v : s.subgradient) g2 += v * v;
  s.subgradient_norm = std::sqrt(g2);
  if (!std::isfinite(s.objective_value) || !std::isfinite(s.subgradient_norm))
    throw SolverError("non-finite objective");
  return s;
}

double objective_value(const LossKind& kind, const Dataset& train, std::span<const double> w,
                       double c) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double loss_sum = 0.0;
  for (const auto& inst : train) loss_sum += loss_value(kind, inst.label, dot(inst.features, w));
  return 0.5 * reg + c * loss_sum;
}

}  // namespace certreg

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "certreg/bounds.hpp"
#include "certreg/loss.hpp"

namespace certreg::testing {

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d, double noise) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution flip(noise);
  std::vector<double> normal(d);
  for (auto& v : normal) v = gauss(rng);
  for (;;) {
    std::vector<LabeledInstance> xs;
    int pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      LabeledInstance inst;
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double v = gauss(rng);
        inst.features.push_back({static_cast<std::uint32_t>(j + 1), v});
        s += v * normal[j];
      }
      inst.label = s >= 0.0 ? 1 : -1;
      if (flip(rng)) inst.label = -inst.label;
      pos += inst.label > 0;
      xs.push_back(std::move(inst));
    }
    if (pos > 0 && pos < static_cast<int>(n)) return Dataset(std::move(xs), d);
  }
}

Fold random_fold(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi, std::size_t d_lo,
                 std::size_t d_hi) {
  std::uniform_int_distribution<std::size_t> n_dist(n_lo, n_hi);
  std::uniform_int_distribution<std::size_t> d_dist(d_lo, d_hi);
  const std::size_t d = d_dist(rng);
  const std::size_t n_train = n_dist(rng);
  const std::size_t n_valid = n_dist(rng);
  // One draw split in two keeps train and validation on the same hyperplane.
  const Dataset all = random_dataset(rng, n_train + n_valid, d);
  std::vector<std::size_t> tr(n_train);
  std::vector<std::size_t> va(n_valid);
  for (std::size_t i = 0; i < n_train; ++i) tr[i] = i;
  for (std::size_t i = 0; i < n_valid; ++i) va[i] = n_train + i;
  Fold f{all.subset(tr), all.subset(va)};
  const auto s = Standardizer::fit(f.train);
  return Fold{s.apply(f.train), s.apply(f.validation)};
}

Oracle::Oracle(const Dataset& train, double huber_width, double tol)
    : train_(train), h_(huber_width), tol_(tol), d_(train.dimension()) {}

namespace {

struct Dense {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

Dense densify(const Dataset& data, std::size_t d) {
  Dense out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(d)),
            Eigen::VectorXd(static_cast<Eigen::Index>(data.size()))};
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const auto& f : data[i].features) {
      if (f.index <= d) out.x(static_cast<Eigen::Index>(i), f.index - 1) = f.value;
    }
    out.y(static_cast<Eigen::Index>(i)) = data[i].label;
  }
  return out;
}

double huber(double m, double h) {
  if (m >= 1.0) return 0.0;
  if (m > 1.0 - h) return (1.0 - m) * (1.0 - m) / (2.0 * h);
  return 1.0 - m - h / 2.0;
}

double huber_d(double m, double h) {
  if (m >= 1.0) return 0.0;
  if (m > 1.0 - h) return -(1.0 - m) / h;
  return -1.0;
}

double huber_dd(double m, double h) { return (m < 1.0 && m > 1.0 - h) ? 1.0 / h : 0.0; }

}  // namespace

double Oracle::objective(const std::vector<double>& w, double c) const {
  const Dense dd = densify(train_, d_);
  const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
  const Eigen::VectorXd m = dd.y.cwiseProduct(dd.x * wv);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) loss += huber(m(i), h_);
  return 0.5 * wv.squaredNorm() + c * loss;
}

OracleSolution Oracle::solve(double c, const std::vector<double>* warm) const {
  const Dense dd = densify(train_, d_);
  const auto n = dd.x.rows();
  const auto d = dd.x.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  if (warm != nullptr) w = Eigen::Map<const Eigen::VectorXd>(warm->data(), d);

  auto value = [&](const Eigen::VectorXd& v) {
    const Eigen::VectorXd m = dd.y.cwiseProduct(dd.x * v);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) loss += huber(m(i), h_);
    return 0.5 * v.squaredNorm() + c * loss;
  };
  auto gradient = [&](const Eigen::VectorXd& v) {
    const Eigen::VectorXd m = dd.y.cwiseProduct(dd.x * v);
    Eigen::VectorXd coef(n);
    for (Eigen::Index i = 0; i < n; ++i) coef(i) = dd.y(i) * huber_d(m(i), h_);
    return Eigen::VectorXd(v + c * dd.x.transpose() * coef);
  };

  Eigen::VectorXd g = gradient(w);
  for (int it = 0; it < 500 && g.norm() > tol_; ++it) {
    const Eigen::VectorXd m = dd.y.cwiseProduct(dd.x * w);
    Eigen::VectorXd curv(n);
    for (Eigen::Index i = 0; i < n; ++i) curv(i) = huber_dd(m(i), h_);
    const Eigen::MatrixXd hess =
        Eigen::MatrixXd::Identity(d, d) + c * dd.x.transpose() * curv.asDiagonal() * dd.x;
    const Eigen::VectorXd p = hess.ldlt().solve(-g);
    const double f0 = value(w);
    const double slope = g.dot(p);
    double t = 1.0;
    Eigen::VectorXd next = w + p;
    while (value(next) > f0 + 1e-4 * t * slope && t > 1e-12) {
      t *= 0.5;
      next = w + t * p;
    }
    if (t <= 1e-12) break;
    w = next;
    g = gradient(w);
  }
  if (!(g.norm() <= tol_)) throw std::runtime_error("oracle did not converge");
  return {c, std::vector<double>(w.data(), w.data() + d), g.norm()};
}

Oracle::ErrorRange Oracle::errors(const OracleSolution& s, const Dataset& validation) {
  ErrorRange r;
  for (const auto& inst : validation) {
    const double margin = inst.label * dot(inst.features, s.w);
    const double slack = s.grad_norm * norm(inst.features);
    if (margin + slack < 0.0) ++r.lo;
    if (margin - slack < 0.0) ++r.hi;
  }
  return r;
}

ApproxSolution solution_from_weights(const Dataset& train, const Dataset& validation, const LossKind& loss,
                                     double c, std::vector<double> w) {
  const auto st = objective_and_subgradient(loss, train, w, c);
  ApproxSolution s;
  s.c = c;
  s.weights = st.weights;
  s.subgradient = st.subgradient;
  s.objective = st.objective_value;
  refresh_norms(s);
  s.point_bounds = point_bounds(s, validation);
  s.converged = true;
  return s;
}

std::vector<double> log_grid(double lo, double hi, std::size_t t) {
  std::vector<double> cs;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < t; ++i) {
    cs.push_back(t == 1 ? lo : std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(t - 1)));
  }
  if (t > 1) {
    cs.front() = lo;
    cs.back() = hi;
  }
  return cs;
}

std::vector<OracleSolution> oracle_path(const Oracle& oracle, const std::vector<double>& cs) {
  std::vector<OracleSolution> out;
  for (double c : cs) out.push_back(oracle.solve(c, out.empty() ? nullptr : &out.back().w));
  return out;
}

}  // namespace certreg::testing

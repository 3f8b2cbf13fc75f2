#include "gkoop/chart.hpp"

#include <cmath>
#include <utility>

namespace gkoop {

ChartModel::ChartModel(std::vector<bool> periodic,
                       std::vector<std::string> names)
    : n_(static_cast<int>(periodic.size())),
      periodic_(std::move(periodic)),
      names_(std::move(names)) {
  if (n_ < 1) throw Error("ChartModel: dimension must be >= 1");
  if (names_.empty()) {
    names_.reserve(n_);
    for (int i = 0; i < n_; ++i)
      names_.push_back((periodic_[i] ? "theta" : "x") + std::to_string(i));
  }
  if (static_cast<int>(names_.size()) != n_)
    throw Error("ChartModel: coordinate names do not match dimension");
}

ChartModel ChartModel::torus(int n) {
  return ChartModel(std::vector<bool>(n, true));
}

ChartModel ChartModel::real(int n) {
  return ChartModel(std::vector<bool>(n, false));
}

bool ChartModel::any_periodic() const {
  for (bool p : periodic_)
    if (p) return true;
  return false;
}

RVec ChartModel::reduce(RVec x) const {
  if (x.size() != n_) throw ShapeMismatch("ChartModel::reduce: wrong length");
  for (int i = 0; i < n_; ++i)
    if (periodic_[i]) x[i] = wrap_angle(x[i]);
  return x;
}

RVec ChartModel::wrap_difference(RVec d) const {
  if (d.size() != n_)
    throw ShapeMismatch("ChartModel::wrap_difference: wrong length");
  for (int i = 0; i < n_; ++i)
    if (periodic_[i]) d[i] = wrap_diff(d[i]);
  return d;
}

RVec VectorField::operator()(const RVec& x) const {
  RVec v = eval(x);
  if (!all_finite(v))
    throw NonFiniteState("VectorField: non-finite value at a sample point");
  return v;
}

RiemannianMetric RiemannianMetric::identity(int n) {
  return constant(RMat::Identity(n, n));
}

RiemannianMetric RiemannianMetric::constant(RMat g) {
  return RiemannianMetric{[g = std::move(g)](const RVec&) { return g; }};
}

RMat RiemannianMetric::gram_at(const RVec& x) const {
  RMat g = gram(x);
  if ((g - g.transpose()).norm() > 1e-12)
    throw SingularMetric("metric: Gram matrix is not symmetric");
  Eigen::LLT<RMat> llt(g);
  if (llt.info() != Eigen::Success)
    throw SingularMetric("metric: Gram matrix is not positive definite");
  return g;
}

namespace {

RVec rk4_step(const VectorField& v, const RVec& x, double h) {
  const RVec k1 = v(x);
  const RVec k2 = v(x + (h / 2.0) * k1);
  const RVec k3 = v(x + (h / 2.0) * k2);
  const RVec k4 = v(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

RVec flow(const VectorField& v, const ChartModel& chart, RVec x, double t,
          double step) {
  if (!(step > 0.0)) throw Error("flow: step must be positive");
  if (std::abs(t) / step > 1e7) throw Error("flow: step budget exceeded");
  if (!all_finite(x)) throw NonFiniteState("flow: non-finite start point");

  const double dir = t >= 0.0 ? 1.0 : -1.0;
  double remaining = std::abs(t);
  while (remaining > 0.0) {
    const double h = std::min(step, remaining);
    x = rk4_step(v, x, dir * h);
    if (!all_finite(x))
      throw NonFiniteState("flow: trajectory left the chart domain");
    x = chart.reduce(std::move(x));
    remaining -= h;
  }
  return x;
}

double metric_inner(const RiemannianMetric& tau, const RVec& x, const RVec& u,
                    const RVec& w) {
  if (!all_finite(u) || !all_finite(w))
    throw Error("metric_inner: non-finite input vector");
  return u.dot(tau.gram_at(x) * w);
}

RVec pushforward_map(const std::function<RVec(const RVec&)>& phi,
                     const ChartModel& target, const RVec& x, const RVec& v,
                     double h) {
  if (!(h > 0.0)) throw Error("pushforward_map: step must be positive");
  const RVec plus = phi(x + h * v);
  const RVec minus = phi(x - h * v);
  if (!all_finite(plus) || !all_finite(minus))
    throw NonFiniteState("pushforward_map: map not evaluable near x");
  return target.wrap_difference(plus - minus) / (2.0 * h);
}

VectorField make_constant_field(RVec value) {
  return VectorField{[value = std::move(value)](const RVec&) { return value; }};
}

VectorField make_trigpoly_field(int n, std::vector<TrigTerm> terms) {
  for (const TrigTerm& t : terms) {
    if (t.comp < 0 || t.comp >= n)
      throw ConfigError("field: term component out of range");
    if (t.kind != TrigTerm::Kind::Const && t.wave.size() != n)
      throw ConfigError("field: wave vector arity does not match chart");
  }
  return VectorField{[n, terms = std::move(terms)](const RVec& x) {
    RVec out = RVec::Zero(n);
    for (const TrigTerm& t : terms) {
      switch (t.kind) {
        case TrigTerm::Kind::Const:
          out[t.comp] += t.coef;
          break;
        case TrigTerm::Kind::Sin:
          out[t.comp] += t.coef * std::sin(t.wave.cast<double>().dot(x));
          break;
        case TrigTerm::Kind::Cos:
          out[t.comp] += t.coef * std::cos(t.wave.cast<double>().dot(x));
          break;
      }
    }
    return out;
  }};
}

}  // namespace gkoop

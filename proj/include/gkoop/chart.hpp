// Chart-based manifold model on R^k x T^(n-k): vector fields, Riemannian
// metrics, the RK4 flow, and finite-difference pushforwards of chart maps.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gkoop/common.hpp"

namespace gkoop {

class ChartModel {
 public:
  ChartModel() = default;
  ChartModel(std::vector<bool> periodic, std::vector<std::string> names = {});

  // All-periodic torus chart or all-real chart.
  static ChartModel torus(int n);
  static ChartModel real(int n);

  int dim() const { return n_; }
  bool is_periodic(int i) const { return periodic_[i]; }
  bool any_periodic() const;
  const std::vector<std::string>& names() const { return names_; }

  // Reduce periodic coordinates into [0, 2*pi).
  RVec reduce(RVec x) const;
  // Shift periodic components of a coordinate difference into (-pi, pi].
  RVec wrap_difference(RVec d) const;

 private:
  int n_ = 0;
  std::vector<bool> periodic_;
  std::vector<std::string> names_;
};

struct VectorField {
  std::function<RVec(const RVec&)> eval;

  RVec operator()(const RVec& x) const;
};

struct RiemannianMetric {
  std::function<RMat(const RVec&)> gram;

  static RiemannianMetric identity(int n);
  static RiemannianMetric constant(RMat g);

  // Validated Gram matrix: symmetric to 1e-12 and positive definite
  // (Cholesky succeeds); throws SingularMetric otherwise.
  RMat gram_at(const RVec& x) const;
};

// Classical fixed-step RK4 approximation of the time-t flow of V from x.
// The last step is shortened to land exactly at t; periodic coordinates are
// reduced after every step. Throws NonFiniteState if the trajectory leaves
// the chart (non-finite coordinates) and Error when |t|/step exceeds the
// 1e7 step budget.
RVec flow(const VectorField& v, const ChartModel& chart, RVec x, double t,
          double step = kDefaultRk4Step);

double metric_inner(const RiemannianMetric& tau, const RVec& x, const RVec& u,
                    const RVec& w);

// Central-difference pushforward of a chart map phi along v, with periodic
// unwrapping of the image difference in the target chart.
RVec pushforward_map(const std::function<RVec(const RVec&)>& phi,
                     const ChartModel& target, const RVec& x, const RVec& v,
                     double h = kDefaultFdStep);

// Trigonometric-polynomial vector fields, the table-driven form used by
// config files: component comp gains coef * {1 | sin(k.theta) | cos(k.theta)}.
struct TrigTerm {
  enum class Kind { Const, Sin, Cos };
  int comp = 0;
  Kind kind = Kind::Const;
  double coef = 0.0;
  Eigen::VectorXi wave;  // k, empty for Const
};

VectorField make_constant_field(RVec value);
VectorField make_trigpoly_field(int n, std::vector<TrigTerm> terms);

}  // namespace gkoop

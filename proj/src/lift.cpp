#include "gkoop/lift.hpp"

#include <cmath>
#include <string>

#include "gkoop/sampling.hpp"

namespace gkoop {

namespace {

AlgebraElement theta_at(const GroupValuedMap& z, const Mat& base_inv,
                        const RVec& y) {
  const GroupElement shifted(base_inv * z(y), z.group);
  return log_grp(shifted);
}

}  // namespace

AlgebraElement LocalLift::theta(const RVec& y) const {
  const RVec offset = map.chart.wrap_difference(y - anchor);
  if (offset.norm() > domain_radius * (1.0 + 1e-9) + 2e-5)
    throw Error("LocalLift: point at distance " + std::to_string(offset.norm()) +
                " is outside the lift domain radius " +
                std::to_string(domain_radius));
  return theta_at(map, map.group->inverse(base.m), y);
}

LocalLift build_lift(const GroupValuedMap& z, const RVec& x) {
  const GroupElement base(z(x), z.group);
  const Mat base_inv = z.group->inverse(base.m);
  const double cap = 0.9 * z.group->injectivity_radius();
  const auto dirs = deterministic_directions(z.chart.dim(), 32);

  auto probes_ok = [&](double r) {
    for (const RVec& dir : dirs) {
      try {
        const AlgebraElement th = theta_at(z, base_inv, RVec(x + r * dir));
        if (!(z.group->injectivity_measure(th.coords) < cap)) return false;
      } catch (const OutOfInjectivityDomain&) {
        return false;
      }
    }
    return true;
  };

  double radius = 1.0;
  if (!probes_ok(1.0)) {
    if (!probes_ok(1e-6))
      throw LiftDomainEmpty("build_lift: no lift domain at radius 1e-6; z is "
                            "not continuous at machine scale near the anchor");
    double lo = 1e-6, hi = 1.0;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      (probes_ok(mid) ? lo : hi) = mid;
    }
    radius = lo;
  }
  return LocalLift{x, base, radius, z};
}

AlgebraElement psi(const AlgebraElement& u, const AlgebraElement& w, double h) {
  if (u.spec != w.spec) throw Error("psi: mismatched group specs");
  const auto& spec = u.spec;
  const Mat plus = spec->exp(u.m + h * w.m);
  const Mat minus = spec->exp(u.m - h * w.m);
  const Mat exp_star = (plus - minus) / (2.0 * h);
  const GroupElement at_u(spec->exp(u.m), spec);
  return trivialize(at_u, exp_star, 1e-6 * std::max(1.0, w.coords.norm()));
}

AlgebraElement tilde_d_theta(const LocalLift& lift, const RVec& x, const RVec& v,
                             double h) {
  const RVec plus = lift.theta(x + h * v).coords;
  const RVec minus = lift.theta(x - h * v).coords;
  const auto theta_star =
      AlgebraElement::from_coords(lift.map.group, (plus - minus) / (2.0 * h));
  return psi(lift.theta(x), theta_star, h);
}

AlgebraElement d_theta_canonical(const LocalLift& lift, const RVec& x,
                                 const RVec& v, double h) {
  const RVec plus = lift.theta(x + h * v).coords;
  const RVec minus = lift.theta(x - h * v).coords;
  return AlgebraElement::from_coords(lift.map.group, (plus - minus) / (2.0 * h));
}

LiftGapReport lift_gap_check(const GroupValuedMap& z, const RVec& anchor,
                             const std::vector<RVec>& probe_points,
                             const std::vector<RVec>& probe_dirs, double h) {
  if (probe_points.size() != probe_dirs.size())
    throw ShapeMismatch("lift_gap_check: points and directions differ in count");
  const LocalLift lift = build_lift(z, anchor);
  LiftGapReport report;
  report.domain_radius = lift.domain_radius;
  for (std::size_t i = 0; i < probe_points.size(); ++i) {
    const RVec& p = probe_points[i];
    const RVec& v = probe_dirs[i];
    const RVec direct = dz(z, p, v, h).coords;
    const double gap_tilde =
        (direct - tilde_d_theta(lift, p, v, h).coords).norm();
    const double gap_canon =
        (direct - d_theta_canonical(lift, p, v, h).coords).norm();
    report.max_gap_tilde = std::max(report.max_gap_tilde, gap_tilde);
    report.max_gap_canonical = std::max(report.max_gap_canonical, gap_canon);
  }
  return report;
}

}  // namespace gkoop

// Local lifts of a group-valued map through the exponential map:
// theta(y) = log(z(x)^-1 z(y)) near an anchor x, so z = L_{z(x)} o exp o
// theta. Two differentials of theta live on the lift domain: the
// psi-trivialized one (always equal to dz) and the canonical coordinate
// Jacobian (equal to dz exactly when the group is abelian).
#pragma once

#include <vector>

#include "gkoop/differential.hpp"

namespace gkoop {

struct LocalLift {
  RVec anchor;
  GroupElement base;      // z(anchor)
  double domain_radius;   // chart radius on which ||theta|| stays inside
                          // 0.9 x injectivity radius
  GroupValuedMap map;

  // theta(y); throws OutOfInjectivityDomain when z(y) leaves the lift's
  // exp-invertible patch and Error when y is outside the domain radius.
  AlgebraElement theta(const RVec& y) const;
};

// Builds the lift at x. The domain radius is found by bisection (40 steps)
// over 32 boundary probes, capped at 1; LiftDomainEmpty if even radius 1e-6
// fails.
LocalLift build_lift(const GroupValuedMap& z, const RVec& x);

// The fiber part of the Psi trivialization of T(g) over u: the differential
// of exp at u, left-translated back to the algebra. Central difference on
// exp with step h.
AlgebraElement psi(const AlgebraElement& u, const AlgebraElement& w,
                   double h = kDefaultFdStep);

// d~theta(x)(v) = psi(theta(x), theta_* v).
AlgebraElement tilde_d_theta(const LocalLift& lift, const RVec& x, const RVec& v,
                             double h = kDefaultFdStep);

// The ordinary coordinate Jacobian of theta along v.
AlgebraElement d_theta_canonical(const LocalLift& lift, const RVec& x,
                                 const RVec& v, double h = kDefaultFdStep);

struct LiftGapReport {
  double max_gap_tilde = 0.0;      // sup ||dz - d~theta||
  double max_gap_canonical = 0.0;  // sup ||dz - d theta||; informational
                                   // for non-abelian groups
  double domain_radius = 0.0;
};

// Evaluates both gaps over probe (point, direction) pairs inside the lift
// domain.
LiftGapReport lift_gap_check(const GroupValuedMap& z, const RVec& anchor,
                             const std::vector<RVec>& probe_points,
                             const std::vector<RVec>& probe_dirs,
                             double h = kDefaultFdStep);

}  // namespace gkoop

// The exterior derivative dz of a group-valued map z : M -> G as a g-valued
// 1-form: dz(x)(v) = L_{z(x)^-1 *} z_* v, evaluated by central differences in
// the matrix representation and projected onto the algebra basis. On top of
// it: the metric gradient, level-set kernels, and rank diagnostics.
//
// The kernel of dz(x) is metric-independent (it equals ker z_*(x)); the
// metric enters only through the gradient's duality relation.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gkoop/chart.hpp"
#include "gkoop/group.hpp"

namespace gkoop {

struct GroupValuedMap {
  std::function<Mat(const RVec&)> eval;
  GroupSpecPtr group;
  ChartModel chart;

  Mat operator()(const RVec& x) const;
};

// dz(x)(v). Central difference with step h along v, left-translated back to
// the algebra. Throws NotTangent when the projection residual exceeds
// 1e-6 * ||v||, which signals z is not numerically C^1 at x or h is
// unsuitable for it.
AlgebraElement dz(const GroupValuedMap& z, const RVec& x, const RVec& v,
                  double h = kDefaultFdStep);

// dz(x)(V(x)) coords per sample, in sample order; errors are rethrown with
// the offending sample index.
std::vector<RVec> dz_along_field(const GroupValuedMap& z, const VectorField& v,
                                 const std::vector<RVec>& samples,
                                 double h = kDefaultFdStep);

// The d x n coordinate matrix of dz(x) assembled from the chart basis
// directions.
RMat dz_jacobian(const GroupValuedMap& z, const RVec& x,
                 double h = kDefaultFdStep);

// The d gradient fields of z under tau: row i of the Jacobian solved
// against the Gram matrix, so <grad_i, w>_tau = (dz(x)(w))_i.
std::vector<RVec> gradient(const GroupValuedMap& z, const RiemannianMetric& tau,
                           const RVec& x, double h = kDefaultFdStep);

// Singular values of dz(x); rank decisions use threshold 1e-8 * sigma_max.
RVec dz_singular_values(const GroupValuedMap& z, const RVec& x,
                        double h = kDefaultFdStep);

int regular_rank(const GroupValuedMap& z, const RVec& x,
                 double h = kDefaultFdStep);

// Orthonormal basis of ker dz(x) as columns (n x (n-d)), sign-fixed so each
// column's first nonzero entry is positive. Throws NotRegular when
// rank < d.
RMat kernel_basis(const GroupValuedMap& z, const RVec& x,
                  double h = kDefaultFdStep);

// The two equivalent routes to dz: the explicit left-translation formula at
// step h, and the bundle-trivialization route through trivialize() at step
// h/2. Their gap is a representation-consistency diagnostic.
std::pair<AlgebraElement, AlgebraElement> dz_two_paths(
    const GroupValuedMap& z, const RVec& x, const RVec& v,
    double h = kDefaultFdStep);

}  // namespace gkoop

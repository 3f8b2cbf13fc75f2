#include "gkoop/differential.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace gkoop {

namespace {

constexpr double kRankThreshold = 1e-8;

// z_* v at x by central difference in the matrix representation.
Mat pushforward_fd(const GroupValuedMap& z, const RVec& x, const RVec& v,
                   double h) {
  if (!(h > 0.0)) throw Error("dz: finite-difference step must be positive");
  if (x.size() != z.chart.dim() || v.size() != z.chart.dim())
    throw ShapeMismatch("dz: point/direction do not match the chart");
  const Mat plus = z(x + h * v);
  const Mat minus = z(x - h * v);
  return (plus - minus) / (2.0 * h);
}

double direction_tolerance(const RVec& v) { return 1e-6 * v.norm(); }

}  // namespace

Mat GroupValuedMap::operator()(const RVec& x) const {
  Mat g = eval(x);
  if (!all_finite(g))
    throw NonFiniteState("GroupValuedMap: non-finite value at a point");
  return g;
}

AlgebraElement dz(const GroupValuedMap& z, const RVec& x, const RVec& v,
                  double h) {
  const Mat zs = pushforward_fd(z, x, v, h);
  const Mat pulled = z.group->inverse(z(x)) * zs;
  auto [coords, resid] = z.group->project_to_algebra(pulled);
  if (resid > direction_tolerance(v))
    throw NotTangent("dz: projection residual " + std::to_string(resid) +
                     " exceeds 1e-6*||v||; z is not numerically C^1 here or "
                     "the step is unsuitable");
  AlgebraElement out;
  out.coords = std::move(coords);
  out.m = z.group->from_coords(out.coords);
  out.spec = z.group;
  return out;
}

std::vector<RVec> dz_along_field(const GroupValuedMap& z, const VectorField& v,
                                 const std::vector<RVec>& samples, double h) {
  if (samples.empty()) throw Error("dz_along_field: empty sample set");
  std::vector<RVec> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      out.push_back(dz(z, samples[i], v(samples[i]), h).coords);
    } catch (const Error& err) {
      throw Error("sample " + std::to_string(i) + ": " + err.what());
    }
  }
  return out;
}

RMat dz_jacobian(const GroupValuedMap& z, const RVec& x, double h) {
  const int n = z.chart.dim();
  const int d = z.group->dim();
  RMat jac(d, n);
  for (int k = 0; k < n; ++k)
    jac.col(k) = dz(z, x, RVec::Unit(n, k), h).coords;
  return jac;
}

std::vector<RVec> gradient(const GroupValuedMap& z, const RiemannianMetric& tau,
                           const RVec& x, double h) {
  const RMat jac = dz_jacobian(z, x, h);
  const RMat gram = tau.gram_at(x);
  Eigen::LLT<RMat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw SingularMetric("gradient: metric factorization failed");
  std::vector<RVec> grads;
  grads.reserve(jac.rows());
  for (int i = 0; i < jac.rows(); ++i)
    grads.push_back(llt.solve(jac.row(i).transpose()));
  return grads;
}

RVec dz_singular_values(const GroupValuedMap& z, const RVec& x, double h) {
  return Eigen::JacobiSVD<RMat>(dz_jacobian(z, x, h)).singularValues();
}

int regular_rank(const GroupValuedMap& z, const RVec& x, double h) {
  const RVec sv = dz_singular_values(z, x, h);
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > kRankThreshold * sv[0]) ++rank;
  return rank;
}

RMat kernel_basis(const GroupValuedMap& z, const RVec& x, double h) {
  const RMat jac = dz_jacobian(z, x, h);
  Eigen::JacobiSVD<RMat> svd(jac, Eigen::ComputeFullV);
  const RVec sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv[i] > kRankThreshold * smax) ++rank;
  if (rank < z.group->dim())
    throw NotRegular("kernel_basis: dz has rank " + std::to_string(rank) +
                     " < d = " + std::to_string(z.group->dim()) + " at x");
  const int n = z.chart.dim();
  RMat kernel = svd.matrixV().rightCols(n - rank);
  for (int c = 0; c < kernel.cols(); ++c) {
    for (int r = 0; r < n; ++r) {
      if (std::abs(kernel(r, c)) > 1e-12) {
        if (kernel(r, c) < 0.0) kernel.col(c) = -kernel.col(c);
        break;
      }
    }
  }
  return kernel;
}

std::pair<AlgebraElement, AlgebraElement> dz_two_paths(const GroupValuedMap& z,
                                                       const RVec& x,
                                                       const RVec& v,
                                                       double h) {
  // One z_* evaluation, then branch at the translation step: the explicit
  // left-translation formula against the bundle route through trivialize.
  const Mat zs = pushforward_fd(z, x, v, h);
  const Mat zx = z(x);
  const double tol = direction_tolerance(v);

  const Mat pulled = z.group->inverse(zx) * zs;
  auto [coords, resid] = z.group->project_to_algebra(pulled);
  if (resid > tol)
    throw NotTangent("dz_two_paths: projection residual exceeds tolerance");
  AlgebraElement direct;
  direct.coords = std::move(coords);
  direct.m = z.group->from_coords(direct.coords);
  direct.spec = z.group;

  const AlgebraElement bundled = trivialize(GroupElement(zx, z.group), zs, tol);
  return {direct, bundled};
}

}  // namespace gkoop

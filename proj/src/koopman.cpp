#include "gkoop/koopman.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace gkoop {

namespace {

RMat stack_rows(const std::vector<RVec>& rows) {
  RMat out(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = rows[i];
  return out;
}

void fix_sign(RVec& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

RVec estimate_frequency(const GroupValuedMap& z, const VectorField& v,
                        const std::vector<RVec>& samples, double h) {
  const auto rows = dz_along_field(z, v, samples, h);
  RVec mean = RVec::Zero(z.group->dim());
  for (const auto& r : rows) mean += r;
  return mean / static_cast<double>(rows.size());
}

EigenReport verify_eigenfunction(const GroupValuedMap& z, const VectorField& v,
                                 const std::vector<RVec>& samples, double tol,
                                 double h) {
  if (samples.size() < 2)
    throw Error("verify_eigenfunction: need at least 2 samples");
  if (!(tol > 0.0)) throw Error("verify_eigenfunction: tolerance must be > 0");

  const auto rows = dz_along_field(z, v, samples, h);
  RVec mean = RVec::Zero(z.group->dim());
  for (const auto& r : rows) mean += r;
  mean /= static_cast<double>(rows.size());

  EigenReport report;
  report.omega_hat = mean;
  report.samples_used = static_cast<int>(samples.size());
  report.tolerance = tol;
  report.deviations.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double dev = (rows[i] - mean).norm();
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) report.failing_samples.push_back(static_cast<int>(i));
  }
  report.is_eigenfunction = report.max_deviation <= tol;
  return report;
}

double semiconjugacy_residual(const GroupValuedMap& z, const VectorField& v,
                              const AlgebraElement& omega, const RVec& x0,
                              double t_final, double rk4_step) {
  if (t_final < 0.0) throw Error("semiconjugacy_residual: T must be >= 0");
  if (t_final == 0.0) return 0.0;

  const GroupElement z0(z(x0), z.group);
  const int checkpoints = 100;
  const double dt = t_final / checkpoints;
  double residual = 0.0;
  RVec x = x0;
  for (int j = 0; j <= checkpoints; ++j) {
    const double t = j * dt;
    if (j > 0) x = flow(v, z.chart, x, dt, rk4_step);
    const GroupElement predicted = group_exp_flow(z0, omega, t);
    residual = std::max(residual, (z(x) - predicted.m).norm());
  }
  return residual;
}

RescaleReport check_rescalable(const GroupValuedMap& z, const VectorField& v,
                               const std::vector<RVec>& samples,
                               double collin_tol, double zero_tol, double h) {
  if (!(collin_tol > 0.0) || !(zero_tol > 0.0))
    throw Error("check_rescalable: tolerances must be > 0");
  const auto rows = dz_along_field(z, v, samples, h);

  RescaleReport report;
  report.min_norm = rows[0].norm();
  for (const auto& r : rows) report.min_norm = std::min(report.min_norm, r.norm());

  Eigen::JacobiSVD<RMat> svd(stack_rows(rows), Eigen::ComputeFullV);
  report.singular_values = svd.singularValues();
  const double s1 = report.singular_values.size() > 0 ? report.singular_values[0] : 0.0;
  const double s2 =
      report.singular_values.size() > 1 ? report.singular_values[1] : 0.0;
  report.collinearity_ratio = s1 > 0.0 ? s2 / s1 : 1.0;
  report.direction = svd.matrixV().col(0);
  fix_sign(report.direction);
  report.rescalable =
      report.collinearity_ratio <= collin_tol && report.min_norm >= zero_tol;
  return report;
}

std::vector<double> compute_alpha(const GroupValuedMap& z, const VectorField& v,
                                  const std::vector<RVec>& samples,
                                  const RVec& omega_target, double collin_tol,
                                  double zero_tol, double h) {
  const double wnorm = omega_target.norm();
  if (!(wnorm > 0.0)) throw Error("compute_alpha: omega_target must be nonzero");

  const RescaleReport pre = check_rescalable(z, v, samples, collin_tol, zero_tol, h);
  if (!pre.rescalable)
    throw Error("compute_alpha: system failed the rescalability check");
  // L is a line: compare directions up to sign.
  const double cosang =
      std::min(1.0, std::abs(pre.direction.dot(omega_target)) / wnorm);
  if (std::acos(cosang) > 1e-6)
    throw DirectionMismatch(
        "compute_alpha: omega_target is not in the detected line L");

  const auto rows = dz_along_field(z, v, samples, h);
  std::vector<double> alpha;
  alpha.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double denom = rows[i].dot(omega_target);
    if (std::abs(denom) < zero_tol)
      throw DivisionNearZero("compute_alpha: <dz(V), omega_target> ~ 0 at sample " +
                             std::to_string(i));
    const double a = wnorm * wnorm / denom;
    if ((a * rows[i] - omega_target).norm() > 1e-6 * wnorm)
      throw Error("compute_alpha: rescaled sample " + std::to_string(i) +
                  " misses omega_target beyond 1e-6");
    alpha.push_back(a);
  }
  return alpha;
}

VectorField rescaled_field(const GroupValuedMap& z, const VectorField& v,
                           const RVec& omega_target, double zero_tol, double h) {
  const double w2 = omega_target.squaredNorm();
  if (!(w2 > 0.0)) throw Error("rescaled_field: omega_target must be nonzero");
  return VectorField{[z, v, omega_target, w2, zero_tol, h](const RVec& x) {
    const RVec row = dz(z, x, v(x), h).coords;
    const double denom = row.dot(omega_target);
    if (std::abs(denom) < zero_tol)
      throw DivisionNearZero("rescaled_field: <dz(V), omega_target> ~ 0");
    return RVec((w2 / denom) * v(x));
  }};
}

S1Report s1_candidate_check(const std::function<Cplx(const RVec&)>& zeta,
                            const ChartModel& chart, const VectorField& v,
                            const std::vector<RVec>& samples, double zero_tol,
                            double h) {
  if (samples.empty()) throw Error("s1_candidate_check: empty sample set");

  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double a = std::abs(zeta(samples[i]));
    if (a < 1e-12)
      throw ZeroValue("s1_candidate_check: |zeta| vanishes at sample " +
                      std::to_string(i));
    lo = i == 0 ? a : std::min(lo, a);
    hi = i == 0 ? a : std::max(hi, a);
    sum += a;
  }
  const double mean = sum / static_cast<double>(samples.size());

  S1Report report;
  report.modulus_spread = (hi - lo) / mean;
  report.modulus_constant = (hi - lo) <= 1e-8 * mean;

  // Normalize to unit modulus and test transversality of V to the level
  // foliation: min |d zeta_hat(V)| must stay away from 0.
  GroupValuedMap zhat{[zeta](const RVec& x) {
                        const Cplx val = zeta(x);
                        Mat g(1, 1);
                        g(0, 0) = val / std::abs(val);
                        return g;
                      },
                      make_u1(), chart};
  const auto rows = dz_along_field(zhat, v, samples, h);
  report.min_abs_derivative = std::abs(rows[0][0]);
  for (const auto& r : rows)
    report.min_abs_derivative = std::min(report.min_abs_derivative, std::abs(r[0]));
  report.transversal = report.min_abs_derivative >= zero_tol;
  return report;
}

}  // namespace gkoop

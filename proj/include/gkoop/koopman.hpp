// Group-valued Koopman eigenfunction verification: z is an eigenfunction
// with frequency omega iff dz(V) is the constant omega, which in turn is
// equivalent to the semiconjugacy z(Phi^t x) = z(x) e^{t omega}. Also the
// rescaling test: a nonvanishing scalar alpha with dz(alpha V) = omega
// exists iff dz(V) is nonzero and collinear across the manifold.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gkoop/differential.hpp"

namespace gkoop {

struct EigenReport {
  bool is_eigenfunction = false;
  RVec omega_hat;                    // sample mean of dz(V) coords
  double max_deviation = 0.0;        // sup_x ||dz(V)(x) - omega_hat||
  double semiconjugacy_residual = 0.0;
  int samples_used = 0;
  double tolerance = 0.0;
  std::vector<double> deviations;    // per sample, in sample order
  std::vector<int> failing_samples;  // indices with deviation > tolerance
};

struct RescaleReport {
  bool rescalable = false;
  RVec direction;                   // unit vector spanning L (top right
                                    // singular vector, first nonzero > 0)
  double collinearity_ratio = 0.0;  // sigma_2 / sigma_1 (0 when d = 1)
  double min_norm = 0.0;            // min_x ||dz(V)(x)||
  std::vector<double> alpha;        // filled by the CLI when applicable
  RVec singular_values;
};

struct S1Report {
  bool modulus_constant = false;
  bool transversal = false;
  double modulus_spread = 0.0;      // (max|zeta| - min|zeta|) / mean|zeta|
  double min_abs_derivative = 0.0;  // min_x |d zeta_hat (V)(x)|
};

// Sample mean of dz(V) coords.
RVec estimate_frequency(const GroupValuedMap& z, const VectorField& v,
                        const std::vector<RVec>& samples,
                        double h = kDefaultFdStep);

// Sup-deviation test of dz(V) against its mean. Needs >= 2 samples.
// semiconjugacy_residual is left at 0; callers that integrate the flow fill
// it in (see the CLI).
EigenReport verify_eigenfunction(const GroupValuedMap& z, const VectorField& v,
                                 const std::vector<RVec>& samples, double tol,
                                 double h = kDefaultFdStep);

// max_t || z(Phi^t x0) - z(x0) e^{t omega} ||_F over 101 checkpoints in
// [0, T]. Frobenius distance in the matrix representation, so the value is
// representation-dependent; it is used only against fixed tolerances.
double semiconjugacy_residual(const GroupValuedMap& z, const VectorField& v,
                              const AlgebraElement& omega, const RVec& x0,
                              double t_final, double rk4_step = kDefaultRk4Step);

// Collinearity + nonvanishing test of the stacked dz(V) samples.
RescaleReport check_rescalable(const GroupValuedMap& z, const VectorField& v,
                               const std::vector<RVec>& samples,
                               double collin_tol = 1e-6, double zero_tol = 1e-8,
                               double h = kDefaultFdStep);

// alpha(x) = <w,w>/<dz(V)(x),w> for w = omega_target, which must lie in the
// detected line L (angle <= 1e-6). Each alpha is re-verified:
// ||alpha dz(V) - w|| <= 1e-6 ||w||.
std::vector<double> compute_alpha(const GroupValuedMap& z, const VectorField& v,
                                  const std::vector<RVec>& samples,
                                  const RVec& omega_target,
                                  double collin_tol = 1e-6,
                                  double zero_tol = 1e-8,
                                  double h = kDefaultFdStep);

// The field alpha V with alpha evaluated pointwise from dz; defined wherever
// the denominator stays away from zero.
VectorField rescaled_field(const GroupValuedMap& z, const VectorField& v,
                           const RVec& omega_target, double zero_tol = 1e-8,
                           double h = kDefaultFdStep);

// The S^1 conditions for a complex-valued candidate: constant modulus, and
// V transversal to the level foliation of the normalized map. Equivalent to
// check_rescalable on the normalized map.
S1Report s1_candidate_check(const std::function<Cplx(const RVec&)>& zeta,
                            const ChartModel& chart, const VectorField& v,
                            const std::vector<RVec>& samples,
                            double zero_tol = 1e-8, double h = kDefaultFdStep);

}  // namespace gkoop

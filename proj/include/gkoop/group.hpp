// Matrix Lie group kernels: group arithmetic, algebra coordinates,
// exponential/logarithm, left-translation pushforwards, and the
// tangent-bundle trivialization TG ~ G x g.
//
// A GroupSpec is an immutable description of one concrete group in a fixed
// faithful matrix representation: the algebra basis (coords are always real
// d-vectors in that basis), closed-form exp/log, the defining constraint of
// the group, and the injectivity radius of exp. Specs are shared via
// shared_ptr and safe to use from many threads.
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gkoop/common.hpp"

namespace gkoop {

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

// How ||v|| is measured against the injectivity radius: Euclidean coords
// norm (rotation angle for SO(3)) or per-factor sup norm (torus).
enum class InjNorm { L2, Sup };

class GroupSpec {
 public:
  virtual ~GroupSpec() = default;

  const std::string& name() const { return name_; }
  int dim() const { return d_; }            // algebra dimension d
  int rep_size() const { return m_; }       // matrix dimension m
  const std::vector<Mat>& basis() const { return basis_; }
  bool abelian() const { return abelian_; }
  double injectivity_radius() const { return inj_radius_; }
  // Human-readable basis convention; reports carry it because all coords
  // are basis-dependent.
  const std::string& basis_name() const { return basis_name_; }

  double injectivity_measure(const RVec& coords) const {
    return inj_norm_ == InjNorm::L2 ? coords.norm()
                                    : coords.cwiseAbs().maxCoeff();
  }

  Mat identity() const { return Mat::Identity(m_, m_); }

  // Closed-form matrix exponential of an algebra element (matrix form).
  virtual Mat exp(const Mat& v) const = 0;
  // Principal logarithm as basis coords; throws OutOfInjectivityDomain
  // where exp is not invertible.
  virtual RVec log(const Mat& g) const = 0;
  // Group inverse; overridden with closed forms where available.
  virtual Mat inverse(const Mat& g) const;
  // Distance from the group's defining constraint (0 = exact member).
  virtual double constraint_violation(const Mat& g) const = 0;

  // Generic scaling-and-squaring exponential, tolerance ~1e-13. Kept as the
  // representation-independent route the closed forms are checked against.
  Mat exp_generic(const Mat& v) const;

  // Least-squares coords of u in span(basis) plus the Frobenius residual.
  std::pair<RVec, double> project_to_algebra(const Mat& u) const;
  Mat from_coords(const RVec& coords) const;

 protected:
  GroupSpec(std::string name, std::string basis_name, int d, int m,
            std::vector<Mat> basis, double inj_radius, InjNorm inj_norm);

 private:
  std::string name_;
  std::string basis_name_;
  int d_ = 0;
  int m_ = 0;
  std::vector<Mat> basis_;
  double inj_radius_ = 0.0;
  InjNorm inj_norm_ = InjNorm::L2;
  bool abelian_ = false;
  RMat basis_stacked_;                              // (2 m^2) x d, real
  Eigen::ColPivHouseholderQR<RMat> basis_qr_;
};

// Shipped groups. "u1" is the 1-factor torus under its own name.
GroupSpecPtr make_u1();
GroupSpecPtr make_torus(int d);
GroupSpecPtr make_so3();
GroupSpecPtr make_heisenberg();
// Lookup by config name: "u1", "torus:d", "so3", "heisenberg".
GroupSpecPtr make_group(const std::string& name);

struct GroupElement {
  Mat m;
  GroupSpecPtr spec;

  GroupElement(Mat mat, GroupSpecPtr s, double tol = 1e-10);
};

struct AlgebraElement {
  RVec coords;  // real d-vector in the spec's basis
  Mat m;        // sum coords_i * E_i
  GroupSpecPtr spec;

  static AlgebraElement from_coords(GroupSpecPtr spec, const RVec& coords);
  // Projects onto the basis; throws NotTangent if the residual exceeds tol.
  static AlgebraElement from_matrix(GroupSpecPtr spec, const Mat& v,
                                    double tol = 1e-12);
  static AlgebraElement zero(GroupSpecPtr spec);
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

// exp of a left-invariant field: time-1 flow from e, i.e. the matrix
// exponential in this representation.
GroupElement exp_alg(const AlgebraElement& v);
AlgebraElement log_grp(const GroupElement& g);

// Pushforward of left translation by g, applied to a tangent matrix at h.
Mat left_pushforward(const GroupElement& g, const Mat& w);

// Inverse of the trivialization I : (g,v) -> g*v. Takes a tangent matrix at
// g back to algebra coords; throws NotTangent when the projection residual
// exceeds tol.
AlgebraElement trivialize(const GroupElement& g, const Mat& v_g,
                          double tol = 1e-8);

// g * exp(t*omega): the group flow generated by omega.
GroupElement group_exp_flow(const GroupElement& g, const AlgebraElement& omega,
                            double t);

}  // namespace gkoop

#include "gkoop/group.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gkoop {

namespace {

// Stack Re and Im entries into one real vector so algebra projection is a
// real least-squares problem (coords are real by contract).
RVec vec_real(const Mat& a) {
  const auto n = a.size();
  RVec out(2 * n);
  Eigen::Map<const Eigen::VectorXcd> flat(a.data(), n);
  out.head(n) = flat.real();
  out.tail(n) = flat.imag();
  return out;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace

GroupSpec::GroupSpec(std::string name, std::string basis_name, int d, int m,
                     std::vector<Mat> basis, double inj_radius,
                     InjNorm inj_norm)
    : name_(std::move(name)),
      basis_name_(std::move(basis_name)),
      d_(d),
      m_(m),
      basis_(std::move(basis)),
      inj_radius_(inj_radius),
      inj_norm_(inj_norm) {
  if (d_ < 1) throw Error("GroupSpec: algebra dimension must be >= 1");
  if (static_cast<int>(basis_.size()) != d_)
    throw Error("GroupSpec: basis size does not match dimension");
  for (const Mat& e : basis_)
    if (e.rows() != m_ || e.cols() != m_)
      throw ShapeMismatch("GroupSpec: basis matrix has wrong shape");

  basis_stacked_.resize(2 * m_ * m_, d_);
  for (int i = 0; i < d_; ++i) basis_stacked_.col(i) = vec_real(basis_[i]);
  basis_qr_.compute(basis_stacked_);
  basis_qr_.setThreshold(1e-12);
  if (basis_qr_.rank() != d_)
    throw Error("GroupSpec '" + name_ + "': basis matrices are not linearly independent");

  // Closure of the bracket, and the abelian flag, both at 1e-12.
  abelian_ = true;
  for (int i = 0; i < d_; ++i) {
    for (int j = i + 1; j < d_; ++j) {
      const Mat c = commutator(basis_[i], basis_[j]);
      if (c.norm() > 1e-12) abelian_ = false;
      auto [coords, resid] = project_to_algebra(c);
      (void)coords;
      if (resid > 1e-12)
        throw Error("GroupSpec '" + name_ +
                    "': commutator [E_" + std::to_string(i) + ",E_" +
                    std::to_string(j) + "] leaves span(basis)");
    }
  }
}

Mat GroupSpec::inverse(const Mat& g) const {
  return g.partialPivLu().solve(Mat::Identity(m_, m_));
}

Mat GroupSpec::exp_generic(const Mat& v) const {
  if (!all_finite(v)) throw Error("exp: non-finite algebra element");
  // Scale so the Taylor series converges fast, square back up.
  int squarings = 0;
  double norm = v.norm();
  while (norm > 0.25 && squarings < 60) {
    norm *= 0.5;
    ++squarings;
  }
  const Mat a = v / std::ldexp(1.0, squarings);
  Mat term = Mat::Identity(m_, m_);
  Mat sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

std::pair<RVec, double> GroupSpec::project_to_algebra(const Mat& u) const {
  if (u.rows() != m_ || u.cols() != m_)
    throw ShapeMismatch("project_to_algebra: matrix has wrong shape");
  const RVec rhs = vec_real(u);
  RVec coords = basis_qr_.solve(rhs);
  const double resid = (basis_stacked_ * coords - rhs).norm();
  return {std::move(coords), resid};
}

Mat GroupSpec::from_coords(const RVec& coords) const {
  if (coords.size() != d_)
    throw ShapeMismatch("from_coords: coords have wrong length");
  Mat v = Mat::Zero(m_, m_);
  for (int i = 0; i < d_; ++i) v += coords[i] * basis_[i];
  return v;
}

// ---------------------------------------------------------------------------
// Torus T^d as diagonal unitary matrices diag(e^{i theta_k}); basis E_k is
// the imaginary unit in slot k. Covers U(1) as the d = 1 case.

namespace {

class TorusSpec final : public GroupSpec {
 public:
  TorusSpec(std::string name, int d)
      : GroupSpec(std::move(name), "diag-imag(E_k = i e_k e_k^T)", d, d,
                  make_basis(d), kPi, InjNorm::Sup) {}

  Mat exp(const Mat& v) const override {
    if (!all_finite(v)) throw Error("exp: non-finite algebra element");
    Mat g = Mat::Zero(rep_size(), rep_size());
    for (int k = 0; k < rep_size(); ++k) g(k, k) = std::exp(v(k, k));
    return g;
  }

  RVec log(const Mat& g) const override {
    RVec coords(dim());
    for (int k = 0; k < dim(); ++k)
      coords[k] = std::atan2(g(k, k).imag(), g(k, k).real());
    return coords;
  }

  Mat inverse(const Mat& g) const override { return g.conjugate(); }

  double constraint_violation(const Mat& g) const override {
    double v = 0.0;
    for (int r = 0; r < rep_size(); ++r)
      for (int c = 0; c < rep_size(); ++c)
        v = std::max(v, r == c ? std::abs(std::abs(g(r, c)) - 1.0)
                               : std::abs(g(r, c)));
    return v;
  }

 private:
  static std::vector<Mat> make_basis(int d) {
    std::vector<Mat> basis;
    basis.reserve(d);
    for (int k = 0; k < d; ++k) {
      Mat e = Mat::Zero(d, d);
      e(k, k) = Cplx(0.0, 1.0);
      basis.push_back(std::move(e));
    }
    return basis;
  }
};

// ---------------------------------------------------------------------------
// SO(3) as real orthogonal 3x3 matrices; basis is the standard skew triple
// with [E1,E2] = E3 cyclically, so coords are the rotation vector.

class So3Spec final : public GroupSpec {
 public:
  So3Spec()
      : GroupSpec("so3", "skew(E1,E2,E3), [E1,E2]=E3", 3, 3, make_basis(),
                  kPi, InjNorm::L2) {}

  Mat exp(const Mat& v) const override {
    if (!all_finite(v)) throw Error("exp: non-finite algebra element");
    const RMat k = v.real();
    const double theta =
        std::sqrt(k(2, 1) * k(2, 1) + k(0, 2) * k(0, 2) + k(1, 0) * k(1, 0));
    double a, b;  // sin(t)/t and (1-cos(t))/t^2, series below ~1e-4
    if (theta < 1e-4) {
      const double t2 = theta * theta;
      a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
      b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
      a = std::sin(theta) / theta;
      b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    const RMat r = RMat::Identity(3, 3) + a * k + b * (k * k);
    return r.cast<Cplx>();
  }

  RVec log(const Mat& g) const override {
    const RMat r = g.real();
    double c = (r.trace() - 1.0) / 2.0;
    c = std::min(1.0, std::max(-1.0, c));
    const double theta = std::acos(c);
    if (theta > kPi - 1e-7)
      throw OutOfInjectivityDomain(
          "so3 log: rotation angle at the injectivity boundary pi");
    Eigen::Vector3d w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0),
                      r(1, 0) - r(0, 1));  // = 2 sin(theta) * axis
    if (theta < 1e-10) return 0.5 * w;
    if (theta < 2.8) return (theta / (2.0 * std::sin(theta))) * w;
    // Near pi the skew part cancels; recover the axis from the symmetric
    // part, signs from its off-diagonal entries.
    const RMat s = 0.5 * (r + r.transpose());
    Eigen::Vector3d a2 = ((s.diagonal().array() - c) / (1.0 - c)).max(0.0);
    Eigen::Vector3d axis = a2.cwiseSqrt();
    int k = 0;
    a2.maxCoeff(&k);
    for (int i = 0; i < 3; ++i)
      if (i != k && s(k, i) < 0.0) axis[i] = -axis[i];
    if (w.dot(axis) < 0.0) axis = -axis;
    return theta * axis;
  }

  Mat inverse(const Mat& g) const override { return g.transpose(); }

  double constraint_violation(const Mat& g) const override {
    const double imag = g.imag().norm();
    const RMat r = g.real();
    const double ortho = (r.transpose() * r - RMat::Identity(3, 3)).norm();
    const double det = std::abs(r.determinant() - 1.0);
    return std::max({imag, ortho, det});
  }

 private:
  static std::vector<Mat> make_basis() {
    RMat e1(3, 3), e2(3, 3), e3(3, 3);
    e1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
    e2 << 0, 0, 1, 0, 0, 0, -1, 0, 0;
    e3 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    return {e1.cast<Cplx>(), e2.cast<Cplx>(), e3.cast<Cplx>()};
  }
};

// ---------------------------------------------------------------------------
// Heisenberg H3 as unit upper-triangular 3x3 real matrices. Strictly upper
// triangular algebra is nilpotent of order 3, so exp/log are polynomials
// and exp is a global bijection (injectivity radius infinity).

class HeisenbergSpec final : public GroupSpec {
 public:
  HeisenbergSpec()
      : GroupSpec("heisenberg", "upper(X=E12, Y=E23, Z=E13), [X,Y]=Z", 3, 3,
                  make_basis(), std::numeric_limits<double>::infinity(),
                  InjNorm::L2) {}

  Mat exp(const Mat& v) const override {
    if (!all_finite(v)) throw Error("exp: non-finite algebra element");
    return Mat::Identity(3, 3) + v + 0.5 * (v * v);
  }

  RVec log(const Mat& g) const override {
    const Mat n = g - Mat::Identity(3, 3);
    const Mat v = n - 0.5 * (n * n);
    return RVec{{v(0, 1).real(), v(1, 2).real(), v(0, 2).real()}};
  }

  Mat inverse(const Mat& g) const override {
    const double a = g(0, 1).real(), b = g(1, 2).real(), c = g(0, 2).real();
    RMat inv(3, 3);
    inv << 1, -a, a * b - c, 0, 1, -b, 0, 0, 1;
    return inv.cast<Cplx>();
  }

  double constraint_violation(const Mat& g) const override {
    double v = g.imag().norm();
    const RMat r = g.real();
    for (int i = 0; i < 3; ++i) v = std::max(v, std::abs(r(i, i) - 1.0));
    v = std::max({v, std::abs(r(1, 0)), std::abs(r(2, 0)), std::abs(r(2, 1))});
    return v;
  }

 private:
  static std::vector<Mat> make_basis() {
    RMat x = RMat::Zero(3, 3), y = RMat::Zero(3, 3), z = RMat::Zero(3, 3);
    x(0, 1) = 1;
    y(1, 2) = 1;
    z(0, 2) = 1;
    return {x.cast<Cplx>(), y.cast<Cplx>(), z.cast<Cplx>()};
  }
};

}  // namespace

GroupSpecPtr make_u1() { return std::make_shared<TorusSpec>("u1", 1); }

GroupSpecPtr make_torus(int d) {
  if (d < 1) throw Error("torus: dimension must be >= 1");
  return std::make_shared<TorusSpec>("torus:" + std::to_string(d), d);
}

GroupSpecPtr make_so3() { return std::make_shared<So3Spec>(); }

GroupSpecPtr make_heisenberg() { return std::make_shared<HeisenbergSpec>(); }

GroupSpecPtr make_group(const std::string& name) {
  if (name == "u1") return make_u1();
  if (name == "so3") return make_so3();
  if (name == "heisenberg") return make_heisenberg();
  if (name.rfind("torus:", 0) == 0) {
    int d = 0;
    std::istringstream in(name.substr(6));
    if (!(in >> d) || !in.eof() || d < 1)
      throw ConfigError("group: bad torus dimension in '" + name + "'");
    return make_torus(d);
  }
  throw ConfigError("group: unknown group name '" + name + "'");
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(Mat mat, GroupSpecPtr s, double tol)
    : m(std::move(mat)), spec(std::move(s)) {
  if (!spec) throw Error("GroupElement: null spec");
  if (m.rows() != spec->rep_size() || m.cols() != spec->rep_size())
    throw ShapeMismatch("GroupElement: matrix has wrong shape");
  const double viol = spec->constraint_violation(m);
  if (!(viol <= tol))
    throw Error("GroupElement: constraint violation " + std::to_string(viol) +
                " exceeds tolerance for group " + spec->name());
}

AlgebraElement AlgebraElement::from_coords(GroupSpecPtr spec,
                                           const RVec& coords) {
  if (!spec) throw Error("AlgebraElement: null spec");
  if (!all_finite(coords))
    throw Error("AlgebraElement: non-finite coordinates");
  AlgebraElement out;
  out.m = spec->from_coords(coords);
  out.coords = coords;
  out.spec = std::move(spec);
  return out;
}

AlgebraElement AlgebraElement::from_matrix(GroupSpecPtr spec, const Mat& v,
                                           double tol) {
  if (!spec) throw Error("AlgebraElement: null spec");
  auto [coords, resid] = spec->project_to_algebra(v);
  if (resid > tol)
    throw NotTangent("AlgebraElement: projection residual " +
                     std::to_string(resid) + " exceeds tolerance");
  AlgebraElement out;
  out.m = v;
  out.coords = std::move(coords);
  out.spec = std::move(spec);
  return out;
}

AlgebraElement AlgebraElement::zero(GroupSpecPtr spec) {
  if (!spec) throw Error("AlgebraElement: null spec");
  const int d = spec->dim();
  return from_coords(std::move(spec), RVec::Zero(d));
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.spec != h.spec) throw Error("compose: mismatched group specs");
  return GroupElement(g.m * h.m, g.spec);
}

GroupElement inverse(const GroupElement& g) {
  return GroupElement(g.spec->inverse(g.m), g.spec);
}

GroupElement exp_alg(const AlgebraElement& v) {
  return GroupElement(v.spec->exp(v.m), v.spec);
}

AlgebraElement log_grp(const GroupElement& g) {
  return AlgebraElement::from_coords(g.spec, g.spec->log(g.m));
}

Mat left_pushforward(const GroupElement& g, const Mat& w) {
  if (w.rows() != g.spec->rep_size() || w.cols() != g.spec->rep_size())
    throw ShapeMismatch("left_pushforward: tangent matrix has wrong shape");
  return g.m * w;
}

AlgebraElement trivialize(const GroupElement& g, const Mat& v_g, double tol) {
  if (v_g.rows() != g.spec->rep_size() || v_g.cols() != g.spec->rep_size())
    throw ShapeMismatch("trivialize: tangent matrix has wrong shape");
  const Mat pulled = g.spec->inverse(g.m) * v_g;
  auto [coords, resid] = g.spec->project_to_algebra(pulled);
  if (resid > tol)
    throw NotTangent("trivialize: projection residual " +
                     std::to_string(resid) + " exceeds tolerance " +
                     std::to_string(tol));
  AlgebraElement out;
  out.coords = std::move(coords);
  out.m = g.spec->from_coords(out.coords);
  out.spec = g.spec;
  return out;
}

GroupElement group_exp_flow(const GroupElement& g, const AlgebraElement& omega,
                            double t) {
  if (g.spec != omega.spec) throw Error("group_exp_flow: mismatched specs");
  return GroupElement(g.m * g.spec->exp(t * omega.m), g.spec);
}

}  // namespace gkoop

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gkoop/group.hpp"
#include "oracles.hpp"

using namespace gkoop;
using test::Rng;

namespace {

const std::vector<GroupSpecPtr>& all_groups() {
  static const std::vector<GroupSpecPtr> groups = {
      make_u1(), make_torus(2), make_torus(3), make_so3(), make_heisenberg()};
  return groups;
}

AlgebraElement alg(const GroupSpecPtr& s, const RVec& c) {
  return AlgebraElement::from_coords(s, c);
}

}  // namespace

TEST_CASE("spec invariants: abelian flags and bracket closure") {
  CHECK(make_u1()->abelian());
  CHECK(make_torus(3)->abelian());
  CHECK_FALSE(make_so3()->abelian());
  CHECK_FALSE(make_heisenberg()->abelian());
  for (const auto& g : all_groups()) {
    CHECK(g->dim() >= 1);
    CHECK(static_cast<int>(g->basis().size()) == g->dim());
  }
}

TEST_CASE("spec construction rejects bad bases") {
  // Two so(3) generators without their bracket: not closed.
  struct Bad final : GroupSpec {
    Bad(std::vector<Mat> b)
        : GroupSpec("bad", "partial-so3", 2, 3, std::move(b), kPi,
                    InjNorm::L2) {}
    Mat exp(const Mat& v) const override { return exp_generic(v); }
    RVec log(const Mat&) const override { return RVec::Zero(2); }
    double constraint_violation(const Mat&) const override { return 0.0; }
  };
  auto so3 = make_so3();
  std::vector<Mat> partial = {so3->basis()[0], so3->basis()[1]};
  CHECK_THROWS_AS(Bad{partial}, Error);

  // Linearly dependent basis.
  struct Dep final : GroupSpec {
    Dep(std::vector<Mat> b)
        : GroupSpec("dep", "dup", 2, 1, std::move(b), kPi, InjNorm::L2) {}
    Mat exp(const Mat& v) const override { return exp_generic(v); }
    RVec log(const Mat&) const override { return RVec::Zero(2); }
    double constraint_violation(const Mat&) const override { return 0.0; }
  };
  Mat i1(1, 1);
  i1(0, 0) = Cplx(0, 1);
  std::vector<Mat> dup = {i1, 2.0 * i1};
  CHECK_THROWS_AS(Dep{dup}, Error);
}

TEST_CASE("exp maps 0 to the identity") {
  for (const auto& g : all_groups()) {
    const GroupElement e = exp_alg(AlgebraElement::zero(g));
    CHECK((e.m - g->identity()).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("u1 exp at pi/2 matches the power-series oracle and (i)") {
  auto u1 = make_u1();
  const auto v = alg(u1, RVec::Constant(1, kPi / 2));
  const GroupElement g = exp_alg(v);
  CHECK(std::abs(g.m(0, 0) - Cplx(0.0, 1.0)) < 1e-12);
  const Mat oracle = test::series_exp(v.m, 20);
  CHECK((g.m - oracle).norm() < 1e-12);
}

TEST_CASE("so3 exp of a quarter turn about z is the frozen rotation") {
  auto so3 = make_so3();
  const GroupElement g = exp_alg(alg(so3, RVec{{0.0, 0.0, kPi / 2}}));
  RMat expected(3, 3);
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((g.m.real() - expected).norm() < 1e-12);
  CHECK(g.m.imag().norm() < 1e-14);
}

TEST_CASE("closed-form exp agrees with scaling-and-squaring to 1e-13") {
  Rng rng(101);
  for (const auto& g : all_groups()) {
    for (int i = 0; i < 50; ++i) {
      const auto v = alg(g, rng.ball(g->dim(), 2.5));
      CHECK((g->exp(v.m) - g->exp_generic(v.m)).norm() < 1e-13);
    }
  }
}

TEST_CASE("log of identity is 0") {
  for (const auto& g : all_groups()) {
    const auto v = log_grp(GroupElement(g->identity(), g));
    CHECK(v.coords.norm() < 1e-14);
  }
}

TEST_CASE("u1 log of (i) is the principal argument pi/2") {
  auto u1 = make_u1();
  Mat gm(1, 1);
  gm(0, 0) = Cplx(0.0, 1.0);
  const auto v = log_grp(GroupElement(gm, u1));
  CHECK(v.coords[0] == doctest::Approx(std::atan2(1.0, 0.0)).epsilon(1e-14));
}

TEST_CASE("so3 log at a rotation by pi is out of the injectivity domain") {
  auto so3 = make_so3();
  const GroupElement g = exp_alg(alg(so3, RVec{{0.0, 0.0, kPi}}));
  CHECK_THROWS_AS(log_grp(g), OutOfInjectivityDomain);
}

TEST_CASE("so3 log is accurate near the injectivity boundary") {
  auto so3 = make_so3();
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    RVec c = rng.unit(3) * rng.uniform(2.8, 3.1);
    const GroupElement g = exp_alg(alg(so3, c));
    const auto back = log_grp(g);
    CHECK((back.coords - c).norm() < 1e-9);
  }
}

TEST_CASE("exp/log round trip: 1000 random coords in the unit ball") {
  Rng rng(7);
  for (const auto& g : all_groups()) {
    for (int i = 0; i < 1000; ++i) {
      const RVec c = rng.ball(g->dim(), 1.0);
      const auto back = log_grp(exp_alg(alg(g, c)));
      REQUIRE((back.coords - c).norm() < 1e-9);
    }
  }
}

TEST_CASE("closure: 1000 random products satisfy the group constraint") {
  Rng rng(13);
  for (const auto& g : all_groups()) {
    for (int i = 0; i < 1000; ++i) {
      const GroupElement a = exp_alg(alg(g, rng.ball(g->dim(), 2.0)));
      const GroupElement b = exp_alg(alg(g, rng.ball(g->dim(), 2.0)));
      const GroupElement c = compose(a, b);  // ctor re-checks the constraint
      REQUIRE(g->constraint_violation(c.m) < 1e-10);
    }
  }
}

TEST_CASE("one-parameter subgroup: exp((s+t)v) = exp(sv) exp(tv)") {
  Rng rng(29);
  for (const auto& g : all_groups()) {
    for (int i = 0; i < 100; ++i) {
      const RVec c = rng.ball(g->dim(), 1.5);
      const double s = rng.uniform(-2.0, 2.0), t = rng.uniform(-2.0, 2.0);
      const Mat lhs = g->exp(g->from_coords(RVec((s + t) * c)));
      const Mat rhs =
          g->exp(g->from_coords(RVec(s * c))) * g->exp(g->from_coords(RVec(t * c)));
      REQUIRE((lhs - rhs).norm() < 1e-10);
    }
  }
}

TEST_CASE("left_pushforward is the matrix product") {
  auto t2 = make_torus(2);
  SUBCASE("identity translation is a no-op") {
    Mat w = Mat::Zero(2, 2);
    w(0, 0) = Cplx(0, 1);
    const Mat out = left_pushforward(GroupElement(t2->identity(), t2), w);
    CHECK((out - w).norm() < 1e-15);
  }
  SUBCASE("frozen product on the 2-torus") {
    Mat gm = Mat::Zero(2, 2);
    gm(0, 0) = Cplx(0, 1);
    gm(1, 1) = Cplx(1, 0);
    Mat w = Mat::Zero(2, 2);
    w(0, 0) = Cplx(0, 1);
    const Mat out = left_pushforward(GroupElement(gm, t2), w);
    CHECK(std::abs(out(0, 0) - Cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(out(1, 1)) < 1e-15);
  }
  SUBCASE("composition law (gh)_* = g_* h_*") {
    Rng rng(31);
    auto so3 = make_so3();
    for (int i = 0; i < 20; ++i) {
      const GroupElement g = exp_alg(alg(so3, rng.ball(3, 2.0)));
      const GroupElement h = exp_alg(alg(so3, rng.ball(3, 2.0)));
      const Mat w = alg(so3, rng.ball(3, 1.0)).m;
      const Mat a = left_pushforward(g, left_pushforward(h, w));
      const Mat b = left_pushforward(compose(g, h), w);
      REQUIRE((a - b).norm() < 1e-12);
    }
  }
}

TEST_CASE("trivialize inverts the left-translation trivialization") {
  Rng rng(37);
  SUBCASE("identity base point") {
    for (const auto& g : all_groups()) {
      const auto v = alg(g, rng.ball(g->dim(), 1.0));
      const auto back = trivialize(GroupElement(g->identity(), g), v.m);
      CHECK((back.coords - v.coords).norm() < 1e-12);
    }
  }
  SUBCASE("round trip through left_pushforward on so3") {
    auto so3 = make_so3();
    for (int i = 0; i < 100; ++i) {
      const GroupElement g = exp_alg(alg(so3, rng.ball(3, 2.5)));
      const auto v = alg(so3, rng.ball(3, 1.5));
      const auto back = trivialize(g, left_pushforward(g, v.m));
      REQUIRE((back.coords - v.coords).norm() < 1e-12);
    }
  }
  SUBCASE("u1 at g=(i): v_g = (-c) has coords (c)") {
    auto u1 = make_u1();
    Mat gm(1, 1);
    gm(0, 0) = Cplx(0, 1);
    Mat vg(1, 1);
    vg(0, 0) = Cplx(-0.75, 0.0);
    const auto out = trivialize(GroupElement(gm, u1), vg);
    CHECK(out.coords[0] == doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("a matrix off the tangent space is rejected") {
    auto u1 = make_u1();
    Mat bad(1, 1);
    bad(0, 0) = Cplx(1.0, 0.0);  // real direction: not in span{(i)} at e
    CHECK_THROWS_AS(trivialize(GroupElement(u1->identity(), u1), bad),
                    NotTangent);
  }
}

TEST_CASE("group_exp_flow") {
  Rng rng(41);
  auto so3 = make_so3();
  SUBCASE("time zero is the identity map") {
    const GroupElement g = exp_alg(alg(so3, rng.ball(3, 2.0)));
    const auto out = group_exp_flow(g, alg(so3, rng.ball(3, 1.0)), 0.0);
    CHECK((out.m - g.m).norm() < 1e-15);
  }
  SUBCASE("from e it reduces to exp(t*omega)") {
    const auto w = alg(so3, RVec{{0.3, -0.2, 0.5}});
    const auto out = group_exp_flow(GroupElement(so3->identity(), so3), w, 1.7);
    CHECK((out.m - so3->exp(Mat(1.7 * w.m))).norm() < 1e-14);
  }
  SUBCASE("a full turn about z returns to the start") {
    const auto w = alg(so3, RVec{{0.0, 0.0, 1.0}});
    const GroupElement g = exp_alg(alg(so3, rng.ball(3, 2.0)));
    const auto out = group_exp_flow(g, w, kTwoPi);
    CHECK((out.m - g.m).norm() < 1e-10);
  }
  SUBCASE("flow property in t") {
    for (const auto& g : all_groups()) {
      for (int i = 0; i < 100; ++i) {
        const GroupElement p = exp_alg(alg(g, rng.ball(g->dim(), 1.5)));
        const auto w = alg(g, rng.ball(g->dim(), 1.0));
        const double s = rng.uniform(-2.0, 2.0), t = rng.uniform(-2.0, 2.0);
        const auto a = group_exp_flow(group_exp_flow(p, w, s), w, t);
        const auto b = group_exp_flow(p, w, s + t);
        REQUIRE((a.m - b.m).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("algebra elements reconstruct exactly from coords") {
  Rng rng(43);
  for (const auto& g : all_groups()) {
    const RVec c = rng.ball(g->dim(), 3.0);
    const auto v = AlgebraElement::from_coords(g, c);
    const auto w = AlgebraElement::from_matrix(g, v.m);
    CHECK((w.coords - c).norm() < 1e-12);
    Mat rebuilt = Mat::Zero(g->rep_size(), g->rep_size());
    for (int i = 0; i < g->dim(); ++i) rebuilt += c[i] * g->basis()[i];
    CHECK((rebuilt - v.m).norm() < 1e-12);
  }
}

TEST_CASE("non-finite algebra input is rejected") {
  auto u1 = make_u1();
  CHECK_THROWS_AS(
      AlgebraElement::from_coords(u1, RVec::Constant(1, std::nan(""))), Error);
}

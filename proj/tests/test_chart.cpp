#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gkoop/chart.hpp"
#include "oracles.hpp"

using namespace gkoop;
using test::Rng;

TEST_CASE("flow at t = 0 returns the start point") {
  auto chart = ChartModel::torus(2);
  auto v = make_constant_field(RVec{{1.0, std::sqrt(2.0)}});
  const RVec x0{{0.3, 0.4}};
  CHECK((flow(v, chart, x0, 0.0) - x0).norm() == 0.0);
}

TEST_CASE("torus rotation: unit time advances by the frequency vector") {
  auto chart = ChartModel::torus(2);
  const RVec omega{{1.0, std::sqrt(2.0)}};
  auto v = make_constant_field(omega);
  const RVec out = flow(v, chart, RVec::Zero(2), 1.0);
  CHECK((out - omega).norm() < 1e-12);  // < 2*pi, so no reduction applies
}

TEST_CASE("linear field on R^1 reproduces the closed-form e^t") {
  auto chart = ChartModel::real(1);
  VectorField v{[](const RVec& x) { return x; }};
  const RVec out = flow(v, chart, RVec::Constant(1, 1.0), 1.0, 1e-3);
  CHECK(std::abs(out[0] - std::exp(1.0)) < 1e-9);
}

TEST_CASE("blow-up raises NonFiniteState") {
  auto chart = ChartModel::real(1);
  VectorField v{[](const RVec& x) { return RVec::Constant(1, x[0] * x[0]); }};
  CHECK_THROWS_AS(flow(v, chart, RVec::Constant(1, 2.0), 1.0, 1e-3),
                  NonFiniteState);
}

TEST_CASE("step budget guard") {
  auto chart = ChartModel::real(1);
  auto v = make_constant_field(RVec::Constant(1, 1.0));
  CHECK_THROWS_AS(flow(v, chart, RVec::Zero(1), 1.0, 1e-9), Error);
}

TEST_CASE("flow group law on a trigpoly field") {
  auto chart = ChartModel::torus(2);
  std::vector<TrigTerm> terms;
  terms.push_back({0, TrigTerm::Kind::Const, 2.0, {}});
  terms.push_back({0, TrigTerm::Kind::Sin, 1.0, Eigen::VectorXi{{1, 0}}});
  terms.push_back({1, TrigTerm::Kind::Const, 2.0 * std::sqrt(2.0), {}});
  terms.push_back(
      {1, TrigTerm::Kind::Sin, std::sqrt(2.0), Eigen::VectorXi{{1, 0}}});
  auto v = make_trigpoly_field(2, terms);

  Rng rng(53);
  for (int i = 0; i < 10; ++i) {
    const RVec x0 = rng.vec(2, 0.0, kTwoPi);
    const double s = rng.uniform(-5.0, 5.0), t = rng.uniform(-5.0, 5.0);
    const RVec a = flow(v, chart, flow(v, chart, x0, s), t);
    const RVec b = flow(v, chart, x0, s + t);
    REQUIRE(chart.wrap_difference(a - b).norm() < 1e-8);
  }
}

TEST_CASE("RK4 order: halving the step shrinks the error by >= 12x") {
  auto chart = ChartModel::real(1);
  VectorField v{[](const RVec& x) { return x; }};
  const double exact = std::exp(1.0);
  const double e1 =
      std::abs(flow(v, chart, RVec::Constant(1, 1.0), 1.0, 0.05)[0] - exact);
  const double e2 =
      std::abs(flow(v, chart, RVec::Constant(1, 1.0), 1.0, 0.025)[0] - exact);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("periodic reduction does not move the embedded point") {
  auto chart = ChartModel::torus(2);
  Rng rng(59);
  for (int i = 0; i < 200; ++i) {
    const RVec raw = rng.vec(2, -100.0, 100.0);
    const RVec red = chart.reduce(raw);
    for (int k = 0; k < 2; ++k) {
      REQUIRE(red[k] >= 0.0);
      REQUIRE(red[k] < kTwoPi);
      REQUIRE(std::abs(std::cos(raw[k]) - std::cos(red[k])) < 1e-12);
      REQUIRE(std::abs(std::sin(raw[k]) - std::sin(red[k])) < 1e-12);
    }
  }
}

TEST_CASE("metric_inner") {
  const RVec x = RVec::Zero(2);
  SUBCASE("identity metric is the dot product") {
    auto tau = RiemannianMetric::identity(2);
    CHECK(metric_inner(tau, x, RVec{{1.0, 2.0}}, RVec{{3.0, -1.0}}) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("frozen diag(2,3) value") {
    RMat g(2, 2);
    g << 2, 0, 0, 3;
    auto tau = RiemannianMetric::constant(g);
    CHECK(metric_inner(tau, x, RVec{{1.0, 0.0}}, RVec{{1.0, 1.0}}) ==
          doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("positive definiteness on u = w") {
    auto tau = RiemannianMetric::identity(2);
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
      const RVec u = rng.unit(2);
      REQUIRE(metric_inner(tau, x, u, u) > 0.0);
    }
  }
  SUBCASE("asymmetric gram is rejected") {
    RMat g(2, 2);
    g << 1, 0.5, 0, 1;
    auto tau = RiemannianMetric::constant(g);
    CHECK_THROWS_AS(metric_inner(tau, x, RVec::Ones(2), RVec::Ones(2)),
                    SingularMetric);
  }
  SUBCASE("indefinite gram is rejected") {
    RMat g(2, 2);
    g << 1, 0, 0, -1;
    auto tau = RiemannianMetric::constant(g);
    CHECK_THROWS_AS(metric_inner(tau, x, RVec::Ones(2), RVec::Ones(2)),
                    SingularMetric);
  }
}

TEST_CASE("pushforward_map") {
  SUBCASE("identity map returns v") {
    auto target = ChartModel::torus(2);
    auto id = [](const RVec& x) { return x; };
    const RVec v{{0.7, -0.3}};
    CHECK((pushforward_map(id, target, RVec{{1.0, 2.0}}, v) - v).norm() <
          1e-10);
  }
  SUBCASE("linear maps are exact up to rounding") {
    auto target = ChartModel::real(2);
    RMat a(2, 2);
    a << 1.5, -0.25, 0.75, 2.0;
    auto lin = [&a](const RVec& x) { return RVec(a * x); };
    Rng rng(67);
    for (int i = 0; i < 50; ++i) {
      const RVec x = rng.vec(2, -2.0, 2.0);
      const RVec v = rng.unit(2);
      REQUIRE((pushforward_map(lin, target, x, v) - a * v).norm() < 1e-10);
    }
  }
  SUBCASE("maps that are not evaluable near x are rejected") {
    auto target = ChartModel::real(1);
    auto half_line = [](const RVec& x) {
      return RVec::Constant(1, std::log(x[0]));  // nan left of the origin
    };
    CHECK_THROWS_AS(
        pushforward_map(half_line, target, RVec::Zero(1), RVec::Ones(1)),
        NonFiniteState);
  }
  SUBCASE("angle-doubling map T^2 -> S^1, including across the seam") {
    auto target = ChartModel::torus(1);
    auto phi = [](const RVec& th) {
      return RVec::Constant(1, wrap_angle(2.0 * th[0] + th[1]));
    };
    const RVec v{{1.0, 0.0}};
    const RVec interior =
        pushforward_map(phi, target, RVec{{1.0, 0.5}}, v);
    CHECK(std::abs(interior[0] - 2.0) < 1e-9);
    // 2*theta1 + theta2 sits exactly on the 0/2pi seam here.
    const RVec seam = pushforward_map(phi, target, RVec{{kPi, 0.0}}, v);
    CHECK(std::abs(seam[0] - 2.0) < 1e-9);
  }
}

#include <cmath>
#include <numbers>

#include "chernforge/forms.hpp"
#include "doctest.h"

using namespace chernforge;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("trapezoid rule on a periodic axis") {
  const ChartDomain d = ChartDomain::box({Axis{0.0, 2 * kPi, 8, true}});
  const auto rule = quadrature_rule(d);
  REQUIRE(rule.size() == 8);
  for (const auto& q : rule) CHECK(q.w == doctest::Approx(2 * kPi / 8));
  CHECK(rule[3].x[0] == doctest::Approx(3 * 2 * kPi / 8));
}

TEST_CASE("two-point Gauss-Legendre on [0,1]") {
  const ChartDomain d = ChartDomain::box({Axis{0.0, 1.0, 4, false}});
  std::vector<double> x, w;
  gauss_legendre(2, 0.0, 1.0, x, w);
  CHECK(x[0] == doctest::Approx(0.5 - 1.0 / (2 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.5 + 1.0 / (2 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-14));
  (void)d;
}

TEST_CASE("weights sum to the domain volume") {
  const ChartDomain d = ChartDomain::box({Axis{0.0, kPi, 17, false, true, true},
                                          Axis{0.0, 2 * kPi, 13, true},
                                          Axis{-1.0, 2.5, 9, false}});
  const auto rule = quadrature_rule(d);
  double s = 0;
  for (const auto& q : rule) s += q.w;
  CHECK(std::abs(s - d.volume()) < 1e-12 * d.volume());
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  std::vector<double> x, w;
  gauss_legendre(5, -1.0, 2.0, x, w);
  // degree-9 polynomial t^9 - 3 t^4
  double s = 0;
  for (int i = 0; i < 5; ++i)
    s += w[i] * (std::pow(x[i], 9) - 3 * std::pow(x[i], 4));
  const double exact = (std::pow(2.0, 10) - 1.0) / 10.0 -
                       3 * (std::pow(2.0, 5) + 1.0) / 5.0;
  CHECK(s == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("boundary of an interval is two signed points") {
  BoundedChain chain;
  chain.source = ChartDomain::box({Axis{0.0, 1.0, 8, false}});
  chain.map = SmoothMap::identity(1);
  const GeometricCycle b = boundary(chain);
  REQUIRE(b.components.size() == 2);
  // lower facet carries -1, upper +1
  CHECK(b.components[0].orientation == doctest::Approx(-1.0));
  CHECK(b.components[0].map.eval({})[0] == doctest::Approx(0.0));
  CHECK(b.components[1].orientation == doctest::Approx(1.0));
  CHECK(b.components[1].map.eval({})[0] == doctest::Approx(1.0));
}

TEST_CASE("boundary of a closed domain is an error") {
  BoundedChain chain;
  chain.source = ChartDomain::box({Axis{0.0, 2 * kPi, 8, true}});
  chain.map = SmoothMap::identity(1);
  CHECK_THROWS_WITH_AS(boundary(chain), "cycle has empty boundary",
                       std::invalid_argument);
}

TEST_CASE("polar cap boundary is the latitude loop plus a thin pole facet") {
  BoundedChain cap;
  const double theta0 = 1.1;
  cap.source = ChartDomain::box({Axis{0.0, theta0, 16, false, true, false},
                                 Axis{0.0, 2 * kPi, 16, true}});
  cap.map = SmoothMap::identity(2);
  const GeometricCycle b = boundary(cap);
  REQUIRE(b.components.size() == 2);

  // a 1-form with nonzero phi-component distinguishes the two facets
  const ChartDomain sphere = ChartDomain::box(
      {Axis{0.0, kPi, 16, false, true, true}, Axis{0.0, 2 * kPi, 16, true}});
  FormField beta;
  beta.domain = sphere;
  beta.degree = 1;
  beta.eval = [](const Coord& x) {
    FormValue v = FormValue::zero(2, 1);
    v.coeff[1](0, 0) = 1.0 - std::cos(x[0]);
    return v;
  };
  double thin = 0, rim = 0;
  for (const auto& c : b.components) {
    const double val =
        integrate_component(beta, c).real();
    if (std::abs(c.map.eval({0.0})[0] - theta0) < 1e-12)
      rim = val;
    else
      thin = val;
  }
  CHECK(std::abs(thin) < 1e-12);
  CHECK(rim == doctest::Approx(2 * kPi * (1 - std::cos(theta0))).epsilon(1e-12));
}

TEST_CASE("quadrature converges past 1e-9 on smooth integrands") {
  auto integral_at = [](int res) {
    const ChartDomain d = ChartDomain::box(
        {Axis{0.0, kPi, res, false, true, true}, Axis{0.0, 2 * kPi, res, true}});
    const auto rule = quadrature_rule(d);
    double s = 0;
    for (const auto& q : rule)
      s += q.w * std::sin(q.x[0]) * (1.0 + 0.3 * std::cos(3 * q.x[1]));
    return s;
  };
  CHECK(std::abs(integral_at(64) - integral_at(128)) < 1e-9);
}

TEST_CASE("smooth map composition and Jacobians") {
  SmoothMap f;
  f.source_dim = 1;
  f.target_dim = 2;
  f.eval = [](const Coord& t) { return Coord{t[0] * t[0], 0.0}; };
  const ChartDomain line = ChartDomain::box({Axis{0.0, 1.0, 32, false}});
  const Eigen::MatrixXd j = map_jacobian(f, line, {0.4});
  CHECK(j(0, 0) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(j(1, 0) == doctest::Approx(0.0));

  const SmoothMap idm = SmoothMap::identity(2);
  const SmoothMap comp = SmoothMap::compose(idm, f);
  CHECK(comp.eval({0.5})[0] == doctest::Approx(0.25));
}

TEST_CASE("point domains quadrature to a single unit weight") {
  const auto rule = quadrature_rule(ChartDomain::point());
  REQUIRE(rule.size() == 1);
  CHECK(rule[0].w == doctest::Approx(1.0));
  CHECK(rule[0].x.empty());
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(ChartDomain::box({Axis{1.0, 0.0, 8, false}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChartDomain::box({Axis{0.0, 1.0, 3, false}}),
                  std::invalid_argument);
  CHECK(ChartDomain::circle(8).closed());
  CHECK(ChartDomain::box({Axis{0.0, kPi, 8, false, true, true}}).closed());
  CHECK_FALSE(ChartDomain::box({Axis{0.0, kPi, 8, false, true, false}}).closed());
}

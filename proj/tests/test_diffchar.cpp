#include <cmath>
#include <cstdio>
#include <numbers>

#include "chernforge/scenario.hpp"
#include "doctest.h"

using namespace chernforge;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GeometricCycle circle_cycle(int res) {
  CycleComponent c;
  c.source = ChartDomain::circle(res);
  c.map = SmoothMap::identity(1);
  return GeometricCycle::single(c);
}

}  // namespace

TEST_CASE("characters from forms (the i2 map)") {
  const ChartDomain s1 = ChartDomain::circle(64);
  const GeometricCycle z = circle_cycle(64);

  const DifferentialCharacter zero = from_form(zero_form(s1, 1));
  CHECK(zero.evaluate(z) == doctest::Approx(0.0));

  for (double c : {1.0, 0.37, -0.2, 2.65}) {
    FormField alpha;
    alpha.domain = s1;
    alpha.degree = 1;
    alpha.eval = [c](const Coord&) {
      FormValue v = FormValue::zero(1, 1);
      v.coeff[0](0, 0) = c / (2 * kPi);
      return v;
    };
    const DifferentialCharacter ch = from_form(alpha);
    CHECK(circle_distance(ch.evaluate(z), frac_unit(c)) < 1e-12);
  }
}

TEST_CASE("flat differential Chern classes vanish (and degree checks bite)") {
  const BundleWithConnection flat = make_bundle("flat:rank=2,dim=2", 32);
  const DifferentialCharacter c1 = differential_chern(flat, 1);
  const GeometricCycle loop = make_cycle("t2-x-loop:y0=0.5,rank=2", 64);
  CHECK(c1.evaluate(loop) == doctest::Approx(0.0));

  CHECK_THROWS_AS(c1.evaluate(make_cycle("t2:rank=2", 16)),
                  std::invalid_argument);
  CHECK_THROWS_AS(differential_chern(make_bundle("ts2", 16), 1),
                  std::invalid_argument);
}

TEST_CASE("cycles without trivializations are rejected") {
  const BundleWithConnection b = make_bundle("monopole:n=1", 32);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  GeometricCycle bare = circle_cycle(64);
  CycleComponent& c = bare.components[0];
  SmoothMap incl;
  incl.source_dim = 1;
  incl.target_dim = 2;
  incl.eval = [](const Coord& x) { return Coord{1.0, x[0]}; };
  c.map = incl;
  CHECK_THROWS_WITH_AS(c1.evaluate(bare), "cycle not trivialized",
                       std::invalid_argument);
}

TEST_CASE("monopole character values against the known latitude formula") {
  for (int n : {1, 2}) {
    const BundleWithConnection b =
        make_bundle("monopole:n=" + std::to_string(n), 64);
    const DifferentialCharacter c1 = differential_chern(b, 1);
    for (double theta0 : {kPi / 6, kPi / 2, 2 * kPi / 3}) {
      const GeometricCycle z =
          make_cycle("latitude:theta0=" + fmt17(theta0), 256);
      const double expect = n * (1.0 - std::cos(theta0)) / 2.0;
      CHECK(circle_distance(c1.evaluate(z), frac_unit(expect)) < 1e-6);
    }
    // shrinking loops see nothing (thin limit)
    const GeometricCycle tiny = make_cycle("latitude:theta0=0.004", 256);
    CHECK(circle_distance(c1.evaluate(tiny), 0.0) < 1e-5);
  }
}

TEST_CASE("delta1 returns the curvature form") {
  const int n = 2;
  const BundleWithConnection b = make_bundle("monopole:n=2", 32);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  const FormValue v = delta1(c1).eval({1.3, 0.4});
  CHECK(std::abs(v.coeff[0](0, 0).real() - (n / (4 * kPi)) * std::sin(1.3)) <
        1e-10);

  // from_form: delta1 is the exterior derivative
  const ChartDomain t2 = make_bundle("torus-flat", 32).base;
  FormField alpha;
  alpha.domain = t2;
  alpha.degree = 1;
  alpha.eval = [](const Coord& x) {
    FormValue v2 = FormValue::zero(2, 1);
    v2.coeff[0](0, 0) = std::sin(x[1]);
    return v2;
  };
  const DifferentialCharacter ch = from_form(alpha);
  const FormValue dv = delta1(ch).eval({0.7, 1.1});
  CHECK(std::abs(dv.coeff[0](0, 0).real() - (-std::cos(1.1))) < 1e-8);

  const DifferentialCharacter zero = from_form(zero_form(t2, 1));
  CHECK(sup_norm(delta1(zero).eval({0.5, 0.5})) < 1e-12);
}

TEST_CASE("delta2 periods round curvature integrals") {
  const GeometricCycle s2 = make_cycle("s2", 96);
  for (int n : {-2, 0, 3}) {
    const BundleWithConnection b =
        make_bundle("monopole:n=" + std::to_string(n), 96);
    const auto periods = delta2_periods(differential_chern(b, 1), {s2});
    CHECK(periods.at(0) == n);
  }
  const auto euler_periods =
      delta2_periods(differential_euler(make_bundle("ts2", 96)), {s2});
  CHECK(euler_periods.at(0) == 2);

  // a doctored character with fractional flux triggers the diagnostic
  const BundleWithConnection b = make_bundle("monopole:n=1", 96);
  DifferentialCharacter broken = differential_chern(b, 1);
  broken.curvature = scale(0.37, broken.curvature);
  CHECK_THROWS_WITH_AS(delta2_periods(broken, {s2}),
                       doctest::Contains("non-integral curvature period"),
                       std::runtime_error);
}

TEST_CASE("bounding property on polar caps") {
  const BundleWithConnection b = make_bundle("monopole:n=1", 64);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  const CharacteristicForm c1f = chern_form(b, 1);
  const BoundedChain cap = make_chain("cap:theta0=1.9", 64);
  const GeometricCycle rim = with_frame(boundary(cap), FrameField::identity(1));
  CHECK(circle_distance(c1.evaluate(rim),
                        frac_unit(integrate(c1f.field, cap).real())) < 1e-5);
}

TEST_CASE("Euler character of the round sphere on cap boundaries") {
  const BundleWithConnection ts2 = make_bundle("ts2", 64);
  const DifferentialCharacter chi = differential_euler(ts2);
  for (double theta0 : {kPi / 2, 2 * kPi / 3}) {
    const GeometricCycle rim = make_cycle(
        "cap-boundary:theta0=" + fmt17(theta0) + ",rank=2", 64);
    CHECK(circle_distance(chi.evaluate(rim),
                          frac_unit(1.0 - std::cos(theta0))) < 1e-6);
  }
}

TEST_CASE("Pontryagin character is invariant under cycle homotopy") {
  const BundleWithConnection b = make_bundle("so3-fourier:seed=17", 24);
  const DifferentialCharacter p1 = differential_pontryagin(b, 1);
  const double v_id = p1.evaluate(make_cycle("t3:rank=3", 20));
  const double v_deformed =
      p1.evaluate(make_cycle("t3-deformed:eps=0.35,rank=3", 20));
  CHECK(circle_distance(v_id, v_deformed) < 1e-5);
  // curvature of p-hat_1 on a 3-dimensional base vanishes by degree
  CHECK(delta1(p1).eval({1.0, 2.0, 3.0}).coeff.empty());
}

TEST_CASE("additivity over disjoint unions and orientation reversal") {
  const BundleWithConnection b = make_bundle("monopole:n=1", 48);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  const GeometricCycle a = make_cycle("latitude:theta0=0.9", 256);
  const GeometricCycle bb = make_cycle("latitude:theta0=2.0", 256);
  GeometricCycle both = a;
  both.components.push_back(bb.components[0]);
  CHECK(circle_distance(c1.evaluate(both),
                        frac_unit(c1.evaluate(a) + c1.evaluate(bb))) < 1e-9);
  CHECK(circle_distance(c1.evaluate(reversed(a)),
                        frac_unit(-c1.evaluate(a))) < 1e-9);
}

TEST_CASE("reparametrization invariance of loop evaluations") {
  const BundleWithConnection b = make_bundle("monopole:n=2", 48);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  const double theta0 = 1.2;
  const GeometricCycle plain =
      make_cycle("latitude:theta0=" + fmt17(theta0), 512);

  CycleComponent c;
  c.source = ChartDomain::circle(512);
  SmoothMap m;
  m.source_dim = 1;
  m.target_dim = 2;
  m.eval = [theta0](const Coord& x) {
    return Coord{theta0, x[0] + 0.5 * std::sin(x[0])};
  };
  c.map = std::move(m);
  c.frame = FrameField::identity(1);
  const GeometricCycle warped = GeometricCycle::single(c);
  CHECK(circle_distance(c1.evaluate(plain), c1.evaluate(warped)) < 1e-6);
}

TEST_CASE("naturality under pullback along the latitude inclusion") {
  const BundleWithConnection b = make_bundle("monopole:n=2", 64);
  const DifferentialCharacter c1 = differential_chern(b, 1);
  const double theta0 = 0.8;
  const GeometricCycle lat =
      make_cycle("latitude:theta0=" + fmt17(theta0), 256);
  const double via_sphere = c1.evaluate(lat);

  // pull the bundle back to the circle and evaluate the fundamental cycle
  const CycleComponent& li = lat.components[0];
  const BundleWithConnection restricted =
      pullback_bundle(b, li.map, li.source);
  const DifferentialCharacter c1r = differential_chern(restricted, 1);
  GeometricCycle circle = circle_cycle(256);
  circle.components[0].frame = FrameField::identity(1);
  CHECK(circle_distance(via_sphere, c1r.evaluate(circle)) < 1e-6);
}

TEST_CASE("Freed-Lott characters: zero odd form reduces exactly") {
  const BundleWithConnection b = make_bundle("torus-flat:a=0.4:b=0.7", 48);
  const DifferentialCharacter plain = differential_chern(b, 1);
  const DifferentialCharacter fl = fl_differential_chern(FLGenerator{b, {}}, 1);
  const GeometricCycle loop = make_cycle("t2-y-loop:x0=0.3", 128);
  CHECK(fl.evaluate(loop) == plain.evaluate(loop));

  // phi without analytic derivative is rejected
  FormField phi;
  phi.domain = b.base;
  phi.degree = 1;
  phi.eval = [](const Coord&) { return FormValue::zero(2, 1); };
  CHECK_THROWS_AS(fl_differential_chern(FLGenerator{b, {phi}}, 1),
                  std::invalid_argument);
}

TEST_CASE("suspension of the constant map is flat") {
  FrameField g;
  g.rank = 1;
  g.eval = [](const Coord&) { return Mat::Identity(1, 1); };
  const BundleWithConnection e = suspend(g, ChartDomain::circle(32), 32);
  CHECK(sup_norm(e.gauge(0).theta.eval({1.0, 2.0})) == doctest::Approx(0.0));
  CHECK(sup_norm(curvature(e).eval({1.0, 2.0})) == doctest::Approx(0.0));
}

TEST_CASE("seam transition of a winding suspension has the right winding") {
  const int m = 2;
  const BundleWithConnection e = make_bundle("suspend-u1:m=2", 48);
  REQUIRE(e.transitions.size() == 1);
  // count the phase winding of det g around the X circle
  const auto& g = e.transitions[0].g;
  double total = 0, prev = std::arg(g.eval({0.0, 0.0}).coeff[0](0, 0));
  const int steps = 200;
  for (int i = 1; i <= steps; ++i) {
    const double phi = 2 * kPi * i / steps;
    const double cur = std::arg(g.eval({0.0, phi}).coeff[0](0, 0));
    double d = cur - prev;
    while (d > kPi) d -= 2 * kPi;
    while (d < -kPi) d += 2 * kPi;
    total += d;
    prev = cur;
  }
  CHECK(total / (2 * kPi) == doctest::Approx(m).epsilon(1e-10));

  // non-unitary maps are rejected
  FrameField bad;
  bad.rank = 1;
  bad.eval = [](const Coord&) { return Mat::Identity(1, 1) * 2.0; };
  CHECK_THROWS_AS(suspend(bad, ChartDomain::circle(16), 16),
                  std::invalid_argument);
}

TEST_CASE("fiber integration of forms") {
  const ChartDomain x_dom = ChartDomain::circle(64);
  const ChartDomain prod = product_with_circle(x_dom, 64);

  // no ds component: exactly zero
  FormField px;
  px.domain = prod;
  px.degree = 1;
  px.eval = [](const Coord&) {
    FormValue v = FormValue::zero(2, 1);
    v.coeff[1](0, 0) = 1.0;
    return v;
  };
  CHECK(sup_norm(fiber_integrate_form(px).eval({1.0})) == doctest::Approx(0.0));

  // (ds / 2 pi) ^ p^* dx integrates to dx
  FormField dsdx;
  dsdx.domain = prod;
  dsdx.degree = 2;
  dsdx.eval = [](const Coord&) {
    FormValue v = FormValue::zero(2, 2);
    v.coeff[0](0, 0) = 1.0 / (2 * kPi);
    return v;
  };
  const FormValue w = fiber_integrate_form(dsdx).eval({0.3});
  CHECK(w.coeff[0](0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

  // plain fiber integration of ds gives the fiber circumference
  FormField ds;
  ds.domain = prod;
  ds.degree = 1;
  ds.eval = [](const Coord&) {
    FormValue v = FormValue::zero(2, 1);
    v.coeff[0](0, 0) = 1.0;
    return v;
  };
  const FormValue c = fiber_integrate_form(ds).eval({0.3});
  CHECK(c.coeff[0](0, 0).real() == doctest::Approx(2 * kPi).epsilon(1e-12));

  // "ds alone" on the bare circle integrates to the 0-form 2 pi on a point
  const FormValue bare =
      fiber_integrate_form(coordinate_differential(x_dom, 0)).eval({});
  CHECK(bare.coeff[0](0, 0).real() == doctest::Approx(2 * kPi).epsilon(1e-12));

  CHECK_THROWS_AS(fiber_integrate_form(constant_form(prod, 1.0)),
                  std::invalid_argument);
  const ChartDomain box = ChartDomain::box(
      {Axis{0.0, 1.0, 8, false}, Axis{0.0, 1.0, 8, false}});
  CHECK_THROWS_AS(fiber_integrate_form(coordinate_differential(box, 0)),
                  std::invalid_argument);
}

TEST_CASE("fiber integration of characters") {
  const ChartDomain x_dom = ChartDomain::circle(64);
  const ChartDomain prod = product_with_circle(x_dom, 64);

  // from_form(p^* beta) integrates to the zero character
  FormField pbeta;
  pbeta.domain = prod;
  pbeta.degree = 1;
  pbeta.eval = [](const Coord& sx) {
    FormValue v = FormValue::zero(2, 1);
    v.coeff[1](0, 0) = 0.3 + 0.1 * std::cos(sx[1]);
    return v;
  };
  const DifferentialCharacter zero =
      fiber_integrate_character(from_form(pbeta), 64);
  CHECK(circle_distance(zero.evaluate(make_cycle("s1-point:phi0=0.9", 32)), 0.0) <
        1e-10);

  // the ds ^ p^* beta character reproduces -i2(beta): the fiber orientation
  // is fixed by delta_1-compatibility
  const double coef = 0.21;
  FormField dsbeta;
  dsbeta.domain = prod;
  dsbeta.degree = 2;
  dsbeta.eval = [coef](const Coord&) {
    FormValue v = FormValue::zero(2, 2);
    v.coeff[0](0, 0) = coef / (2 * kPi);
    return v;
  };
  const DifferentialCharacter f =
      fiber_integrate_character(from_form(dsbeta), 64);
  GeometricCycle x_cycle = circle_cycle(64);
  CHECK(circle_distance(f.evaluate(x_cycle), frac_unit(-coef * 2 * kPi)) < 1e-9);

  // curvature side commutes with fiber integration by construction; the
  // bounding property ties the evaluation side to it
  FrameField g2;
  g2.rank = 1;
  g2.eval = [](const Coord& x) {
    Mat v(1, 1);
    v(0, 0) = std::exp(kI * 2.0 * x[0]);
    return v;
  };
  g2.analytic_d = [](const Coord& x) {
    FormValue v = FormValue::zero(1, 1);
    v.coeff[0](0, 0) = kI * 2.0 * std::exp(kI * 2.0 * x[0]);
    return v;
  };
  const DifferentialCharacter odd = odd_differential_chern(g2, x_dom, 0, 64);
  const double v0 = odd.evaluate(make_cycle("s1-point:phi0=0.4", 16));
  const double v1 = odd.evaluate(make_cycle("s1-point:phi0=1.1", 16));
  // bounding: difference of point values equals the curvature integral over
  // the connecting arc
  FormField curv = odd.curvature;
  BoundedChain arc;
  arc.source = ChartDomain::box({Axis{0.4, 1.1, 64, false}});
  arc.map = SmoothMap::identity(1);
  const double flux = integrate(curv, arc).real();
  CHECK(circle_distance(frac_unit(v1 - v0), frac_unit(flux)) < 1e-8);
}

TEST_CASE("odd character point values") {
  // constant map on a point base: value is the log-phase of g
  for (double alpha0 : {0.8, 2.4}) {
    FrameField g;
    g.rank = 1;
    g.eval = [alpha0](const Coord&) {
      Mat v(1, 1);
      v(0, 0) = std::exp(kI * alpha0);
      return v;
    };
    // X = S^1 with a constant map keeps the machinery uniform
    const DifferentialCharacter odd =
        odd_differential_chern(g, ChartDomain::circle(32), 0, 64);
    const double v = odd.evaluate(make_cycle("s1-point:phi0=0.0", 16));
    // holonomy of the suspended bundle around the fiber circle
    CHECK(circle_distance(v, frac_unit(alpha0 / (2 * kPi))) < 1e-8);
  }

  // identity map gives the zero character
  FrameField id1;
  id1.rank = 1;
  id1.eval = [](const Coord&) { return Mat::Identity(1, 1); };
  const DifferentialCharacter odd0 =
      odd_differential_chern(id1, ChartDomain::circle(32), 0, 64);
  CHECK(circle_distance(odd0.evaluate(make_cycle("s1-point:phi0=1.5", 16)),
                        0.0) < 1e-10);
}

TEST_CASE("Whitney at curvature level for character sums") {
  const BundleWithConnection a = make_bundle("u2-fourier-4d:seed=41", 12);
  const BundleWithConnection b = make_bundle("u2-fourier-4d:seed=42", 12);
  const BundleWithConnection s = direct_sum(a, b);
  const DifferentialCharacter c2 = differential_chern(s, 2);
  FormField expect = zero_form(a.base, 4);
  for (int i = 0; i <= 2; ++i)
    expect = add(expect, wedge(chern_form(a, i).field,
                               chern_form(b, 2 - i).field));
  double worst = 0;
  for (double u : {0.5, 2.7})
    for (double v : {1.4, 4.9}) {
      const Coord x{u, v, 0.3, 2.2};
      worst = std::max(worst, sup_norm(add(delta1(c2).eval(x),
                                           scale(-1.0, expect.eval(x)))));
    }
  CHECK(worst < 1e-10);
}

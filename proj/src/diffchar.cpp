#include "chernforge/diffchar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace chernforge {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

const std::complex<double> kCurvatureScale =
    1.0 / (2.0 * std::numbers::pi * kI);

void check_cycle_dimension(const GeometricCycle& z, int want) {
  if (z.components.empty() || z.dimension() != want)
    throw std::invalid_argument(
        "character evaluation: cycle dimension does not match degree");
  for (const auto& c : z.components)
    if (!c.source.closed())
      throw std::invalid_argument("character evaluation: cycle is not closed");
}

/// Frame as a matrix-valued 0-form on the component source.
FormField frame_as_form(const FrameField& frame, const ChartDomain& source) {
  FormField f;
  f.domain = source;
  f.degree = 0;
  f.rows = f.cols = frame.rank;
  const int dim = source.dim();
  f.eval = [ev = frame.eval, dim](const Coord& y) {
    return FormValue::scalar(dim, ev(y));
  };
  if (frame.analytic_d) {
    FormField df;
    df.domain = source;
    df.degree = 1;
    df.rows = df.cols = frame.rank;
    df.eval = frame.analytic_d;
    f.analytic_d = std::make_shared<FormField>(std::move(df));
  }
  return f;
}

/// Connection 1-form of the pulled-back bundle in the frame tau:
/// theta_tau = tau^-1 theta_z tau + tau^-1 d tau.
FormField trivialized_connection(const BundleWithConnection& b,
                                 const CycleComponent& comp) {
  if (!comp.frame)
    throw std::invalid_argument("cycle not trivialized");
  const FormField theta_z =
      pullback(b.gauge(comp.gauge).theta, comp.map, comp.source);
  const FormField tau = frame_as_form(*comp.frame, comp.source);
  FormField f;
  f.domain = comp.source;
  f.degree = 1;
  f.rows = f.cols = b.rank;
  const int dim = comp.source.dim();
  f.eval = [theta_z, tau, dim](const Coord& y) {
    const Mat tv = tau.eval(y).coeff[0];
    const Mat ti = tv.inverse();
    const FormValue dtau = exterior_derivative_value(tau, y);
    FormValue v = wedge(FormValue::scalar(dim, ti),
                        wedge(theta_z.eval(y), FormValue::scalar(dim, tv)));
    return add(v, wedge(FormValue::scalar(dim, ti), dtau));
  };
  return f;
}

double integrate_real_over_source(const FormField& form, double orientation) {
  CycleComponent self;
  self.source = form.domain;
  self.map = SmoothMap::identity(form.domain.dim());
  self.orientation = orientation;
  return integrate_component(form, self).real();
}

/// Shared evaluation scheme of the explicit characteristic characters: per
/// component, transgress from the flat connection of the frame to the
/// trivialized pullback connection and integrate.
enum class TransgressionKind { Chern, Pontryagin, Euler };

DifferentialCharacter make_characteristic_character(
    const BundleWithConnection& b, int k, FormField curvature_field,
    TransgressionKind kind) {
  DifferentialCharacter ch;
  ch.degree = curvature_field.degree;
  ch.curvature = std::move(curvature_field);
  const int cycle_dim = ch.degree - 1;
  ch.evaluate = [b, k, kind, cycle_dim](const GeometricCycle& z) {
    check_cycle_dimension(z, cycle_dim);
    double total = 0.0;
    for (const auto& comp : z.components) {
      const FormField theta_tau = trivialized_connection(b, comp);
      const FormField flat = zero_form(comp.source, 1, b.rank, b.rank);
      FormField t;
      switch (kind) {
        case TransgressionKind::Chern:
          t = transgression_chern_forms(flat, theta_tau, k);
          break;
        case TransgressionKind::Pontryagin:
          t = scale(k % 2 == 0 ? 1.0 : -1.0,
                    transgression_chern_forms(flat, theta_tau, 2 * k));
          break;
        case TransgressionKind::Euler:
          t = transgression_euler_forms(flat, theta_tau);
          break;
      }
      total += integrate_real_over_source(t, comp.orientation);
    }
    return frac_unit(total);
  };
  return ch;
}

}  // namespace

double frac_unit(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

double circle_distance(double a, double b) {
  const double d = frac_unit(a - b);
  return std::min(d, 1.0 - d);
}

DifferentialCharacter from_form(const FormField& alpha) {
  if (alpha.rows != 1 || alpha.cols != 1)
    throw std::invalid_argument("from_form: scalar forms only");
  DifferentialCharacter ch;
  ch.degree = alpha.degree + 1;
  // d of a top-degree form is the structural zero of the next degree
  ch.curvature = alpha.degree < alpha.domain.dim()
                     ? exterior_derivative(alpha)
                     : zero_form(alpha.domain, alpha.degree + 1);
  const int cycle_dim = alpha.degree;
  ch.evaluate = [alpha, cycle_dim](const GeometricCycle& z) {
    check_cycle_dimension(z, cycle_dim);
    return frac_unit(integrate(alpha, z).real());
  };
  return ch;
}

DifferentialCharacter differential_chern(const BundleWithConnection& b,
                                         int k) {
  if (b.structure != StructureGroup::Unitary)
    throw std::invalid_argument("differential_chern: unitary bundles only");
  if (k < 1) throw std::invalid_argument("differential_chern: k must be >= 1");
  return make_characteristic_character(b, k, chern_form(b, k).field,
                                       TransgressionKind::Chern);
}

DifferentialCharacter differential_pontryagin(const BundleWithConnection& b,
                                              int k) {
  if (k < 1)
    throw std::invalid_argument("differential_pontryagin: k must be >= 1");
  return make_characteristic_character(b, k, pontryagin_form(b, k).field,
                                       TransgressionKind::Pontryagin);
}

DifferentialCharacter differential_euler(const BundleWithConnection& b) {
  return make_characteristic_character(b, 0, euler_form(b).field,
                                       TransgressionKind::Euler);
}

const FormField& delta1(const DifferentialCharacter& f) { return f.curvature; }

std::vector<long> delta2_periods(const DifferentialCharacter& f,
                                 const std::vector<GeometricCycle>& basis) {
  std::vector<long> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double period = integrate(f.curvature, basis[i]).real();
    const double nearest = std::round(period);
    if (std::abs(period - nearest) > 0.1)
      throw std::runtime_error(
          "delta2: non-integral curvature period " + std::to_string(period) +
          " on cycle #" + std::to_string(i));
    out.push_back(static_cast<long>(nearest));
  }
  return out;
}

DifferentialCharacter character_sum(const DifferentialCharacter& a,
                                    const DifferentialCharacter& b) {
  if (a.degree != b.degree)
    throw std::invalid_argument("character_sum: degree mismatch");
  DifferentialCharacter ch;
  ch.degree = a.degree;
  ch.curvature = add(a.curvature, b.curvature);
  ch.evaluate = [ea = a.evaluate, eb = b.evaluate](const GeometricCycle& z) {
    return frac_unit(ea(z) + eb(z));
  };
  return ch;
}

DifferentialCharacter fl_differential_chern(const FLGenerator& gen, int k) {
  const BundleWithConnection& b = gen.bundle;
  if (b.structure != StructureGroup::Unitary)
    throw std::invalid_argument("fl_differential_chern: unitary bundles only");
  for (const auto& phi : gen.phi)
    if (!phi.analytic_d)
      throw std::invalid_argument(
          "fl_differential_chern: phi components need analytic derivatives");

  const int dim = b.base.dim();
  const FormField theta = b.gauge(0).theta;
  std::vector<FormField> phi = gen.phi;

  // curvature = s_k(ch(nabla) + d phi)
  FormField curv;
  curv.domain = b.base;
  curv.degree = 2 * k;
  curv.eval = [theta, phi, k, dim](const Coord& x) {
    const FormValue omega = curvature_value(theta, x);
    std::vector<FormValue> p;
    p.reserve(k);
    for (int j = 1; j <= k; ++j) {
      // P_j(t=1) = j! (ch_j + d phi_{[2j-1]}) = P_j(omega) + j! d phi
      FormValue pj = power_sum_value(omega, j);
      if (static_cast<std::size_t>(j) <= phi.size()) {
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        pj = add(pj, scale(fact,
                           exterior_derivative_value(phi[j - 1], x)));
      }
      p.push_back(pj);
    }
    return symfunc::elementary_from_power_ring(p, k, FormValueOps{dim});
  };

  // odd correction form T_k(phi)
  std::vector<symfunc::SymPolynomial> dpolys;
  for (int j = 1; j <= k; ++j)
    dpolys.push_back(symfunc::elementary_in_power_sums(k).derivative(j));
  std::vector<double> gx, gw;
  gauss_legendre(8, 0.0, 1.0, gx, gw);
  FormField tk;
  tk.domain = b.base;
  tk.degree = 2 * k - 1;
  tk.eval = [theta, phi, k, dim, dpolys, gx, gw](const Coord& x) -> FormValue {
    const FormValue omega = curvature_value(theta, x);
    std::vector<FormValue> p0(k), dphi(k);
    for (int j = 1; j <= k; ++j) {
      p0[j - 1] = power_sum_value(omega, j);
      if (static_cast<std::size_t>(j) <= phi.size()) {
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        dphi[j - 1] =
            scale(fact, exterior_derivative_value(phi[j - 1], x));
      }
    }
    const FormValueOps ops{dim};
    FormValue acc;
    for (int node = 0; node < 8; ++node) {
      const double t = gx[node], wt = gw[node];
      std::vector<FormValue> pt(k);
      for (int j = 1; j <= k; ++j) {
        pt[j - 1] = p0[j - 1];
        if (!dphi[j - 1].is_universal_zero())
          pt[j - 1] = add(pt[j - 1], scale(t, dphi[j - 1]));
      }
      FormValue inner;
      for (int j = 1; j <= k; ++j) {
        if (static_cast<std::size_t>(j) > phi.size()) continue;
        if (dpolys[j - 1].is_zero()) continue;
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        const FormValue coeff = dpolys[j - 1].evaluate_ring(pt, ops);
        inner = add(inner, wedge(coeff, scale(fact, phi[j - 1].eval(x))));
      }
      acc = add(acc, scale(wt, inner));
    }
    if (acc.is_universal_zero()) return FormValue::zero(dim, 2 * k - 1);
    return acc;
  };

  const DifferentialCharacter base = differential_chern(b, k);
  DifferentialCharacter ch;
  ch.degree = 2 * k;
  ch.curvature = std::move(curv);
  ch.evaluate = [base_eval = base.evaluate, tk](const GeometricCycle& z) {
    return frac_unit(base_eval(z) + integrate(tk, z).real());
  };
  return ch;
}

BundleWithConnection suspend(const FrameField& g, const ChartDomain& x_domain,
                             int fiber_res) {
  const long r = g.rank;
  const int xd = x_domain.dim();
  // g must be unitary on samples
  {
    auto rule = quadrature_rule(x_domain);
    const std::size_t stride = std::max<std::size_t>(1, rule.size() / 16);
    for (std::size_t i = 0; i < rule.size(); i += stride) {
      const Mat gv = g.eval(rule[i].x);
      if ((gv.adjoint() * gv - Mat::Identity(r, r)).cwiseAbs().maxCoeff() >
          1e-8)
        throw std::invalid_argument("suspend: map is not unitary on samples");
    }
  }

  BundleWithConnection b;
  b.rank = r;
  b.structure = StructureGroup::Unitary;
  b.base = product_with_circle(x_domain, fiber_res);
  const int dim = b.base.dim();

  // g^-1 dg as a 1-form value on the product chart (no ds component)
  FormField g_x;  // g as 0-form on X for finite differencing
  g_x.domain = x_domain;
  g_x.degree = 0;
  g_x.rows = g_x.cols = r;
  g_x.eval = [ev = g.eval, xd](const Coord& x) {
    return FormValue::scalar(xd, ev(x));
  };
  if (g.analytic_d) {
    FormField dg;
    dg.domain = x_domain;
    dg.degree = 1;
    dg.rows = dg.cols = r;
    dg.eval = g.analytic_d;
    g_x.analytic_d = std::make_shared<FormField>(std::move(dg));
  }
  auto mc_value = [g_x, dim, xd, r](const Coord& sx) -> FormValue {
    const Coord x(sx.begin() + 1, sx.end());
    const Mat gi = g_x.eval(x).coeff[0].inverse();
    const FormValue dg = exterior_derivative_value(g_x, x);
    FormValue out = FormValue::zero(dim, 1, r, r);
    for (int i = 0; i < xd; ++i) out.coeff[i + 1] = gi * dg.coeff[i];
    return out;
  };
  auto rho = [](double s) { return (s - std::sin(s)) / (2 * std::numbers::pi); };
  auto drho = [](double s) {
    return (1 - std::cos(s)) / (2 * std::numbers::pi);
  };

  FormField theta;
  theta.domain = b.base;
  theta.degree = 1;
  theta.rows = theta.cols = r;
  theta.eval = [mc_value, rho](const Coord& sx) {
    return scale(rho(sx[0]), mc_value(sx));
  };
  {
    // d theta = rho' ds ^ a - rho a ^ a  with a = g^-1 dg
    FormField dtheta;
    dtheta.domain = b.base;
    dtheta.degree = 2;
    dtheta.rows = dtheta.cols = r;
    dtheta.eval = [mc_value, rho, drho, dim, r](const Coord& sx) {
      const FormValue a = mc_value(sx);
      FormValue ds = FormValue::zero(dim, 1, r, r);
      ds.coeff[0] = Mat::Identity(r, r);
      FormValue v = scale(drho(sx[0]), wedge(ds, a));
      return add(v, scale(-rho(sx[0]), wedge(a, a)));
    };
    theta.analytic_d = std::make_shared<FormField>(std::move(dtheta));
  }
  b.gauges.push_back(GaugePatch{"suspension", std::move(theta), nullptr});

  // seam identification at s = 0 ~ 2 pi by the clutching map itself
  FormField seam;
  seam.domain = b.base;
  seam.degree = 0;
  seam.rows = seam.cols = r;
  seam.eval = [ev = g.eval, dim](const Coord& sx) {
    const Coord x(sx.begin() + 1, sx.end());
    return FormValue::scalar(dim, ev(x));
  };
  b.transitions.push_back(GaugeTransition{0, 0, std::move(seam)});
  return b;
}

FormField fiber_integrate_form(const FormField& w) {
  if (w.degree < 1)
    throw std::invalid_argument("fiber_integrate_form: degree must be >= 1");
  if (w.domain.dim() < 1 || !w.domain.axes[0].periodic)
    throw std::invalid_argument(
        "fiber_integrate_form: domain is not a product with a circle axis");
  ChartDomain x_dom;
  x_dom.axes.assign(w.domain.axes.begin() + 1, w.domain.axes.end());
  FormField out;
  out.domain = x_dom;
  out.degree = w.degree - 1;
  out.rows = w.rows;
  out.cols = w.cols;
  const int xd = x_dom.dim();
  const int p = out.degree;
  const Axis fiber = w.domain.axes[0];
  out.eval = [w, xd, p, fiber](const Coord& y) {
    FormValue acc = FormValue::zero(xd, p, w.rows, w.cols);
    if (acc.coeff.empty()) return acc;
    const double h = (fiber.hi - fiber.lo) / fiber.res;
    const auto& out_idx = multi_indices(xd, p);
    for (int n = 0; n < fiber.res; ++n) {
      Coord sx(y.size() + 1);
      sx[0] = fiber.lo + n * h;
      for (std::size_t i = 0; i < y.size(); ++i) sx[i + 1] = y[i];
      const FormValue v = w.eval(sx);
      for (std::size_t ir = 0; ir < out_idx.size(); ++ir) {
        std::vector<int> in_index{0};
        for (int ax : out_idx[ir]) in_index.push_back(ax + 1);
        const int rank = multi_index_rank(w.domain.dim(), in_index);
        acc.coeff[ir] += h * v.coeff[rank];
      }
    }
    return acc;
  };
  return out;
}

DifferentialCharacter fiber_integrate_character(
    const DifferentialCharacter& f, int fiber_res,
    ProductFrameBuilder frame_builder) {
  if (f.degree < 2)
    throw std::invalid_argument("fiber_integrate_character: degree must be >= 2");
  DifferentialCharacter ch;
  ch.degree = f.degree - 1;
  ch.curvature = fiber_integrate_form(f.curvature);
  ch.evaluate = [f, fiber_res, frame_builder](const GeometricCycle& z) {
    // Orientation -1 on the fiber makes delta_1 commute with fiber
    // integration under the outward-normal-first boundary convention.
    GeometricCycle product = product_with_circle(z, fiber_res, -1.0);
    for (std::size_t i = 0; i < z.components.size(); ++i) {
      if (frame_builder) {
        if (auto fr = frame_builder(z.components[i]))
          product.components[i].frame = std::move(fr);
      }
    }
    return f.evaluate(product);
  };
  return ch;
}

DifferentialCharacter odd_differential_chern(const FrameField& g,
                                             const ChartDomain& x_domain,
                                             int k, int fiber_res) {
  const BundleWithConnection susp = suspend(g, x_domain, fiber_res);
  const DifferentialCharacter even = differential_chern(susp, k + 1);
  // Fiber-loop trivializations over point cycles: tau(s) = exp(-s log g / 2pi)
  // satisfies the seam condition tau(0) = g tau(2 pi).
  ProductFrameBuilder builder =
      [g](const CycleComponent& base) -> std::optional<FrameField> {
    if (base.source.dim() != 0) return std::nullopt;
    const Mat gv = g.eval(base.map.eval({}));
    const Mat lg = gv.log();
    FrameField fr;
    fr.rank = g.rank;
    fr.eval = [lg](const Coord& sy) -> Mat {
      return (-sy[0] / (2 * std::numbers::pi) * lg).exp();
    };
    fr.analytic_d = [lg, r = g.rank](const Coord& sy) {
      FormValue v = FormValue::zero(1, 1, r, r);
      const Mat e = (-sy[0] / (2 * std::numbers::pi) * lg).exp();
      v.coeff[0] = (-1.0 / (2 * std::numbers::pi)) * lg * e;
      return v;
    };
    return fr;
  };
  return fiber_integrate_character(even, fiber_res, builder);
}

}  // namespace chernforge

#include "chernforge/connections.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chernforge {

const GaugePatch& BundleWithConnection::gauge(int i) const {
  if (i < 0 || i >= static_cast<int>(gauges.size()))
    throw std::invalid_argument("bundle: no such gauge");
  return gauges[i];
}

FormValue curvature_value(const FormField& theta, const Coord& x) {
  FormValue d = exterior_derivative_value(theta, x);
  return add(d, wedge(theta.eval(x), theta.eval(x)));
}

FormField curvature(const BundleWithConnection& b, int gauge) {
  const FormField theta = b.gauge(gauge).theta;
  FormField f;
  f.domain = b.base;
  f.degree = 2;
  f.rows = b.rank;
  f.cols = b.rank;
  f.eval = [theta](const Coord& x) { return curvature_value(theta, x); };
  return f;
}

BundleWithConnection direct_sum(const BundleWithConnection& a,
                                const BundleWithConnection& b) {
  if (a.base.dim() != b.base.dim())
    throw std::invalid_argument("direct_sum: base mismatch");
  for (int i = 0; i < a.base.dim(); ++i)
    if (a.base.axes[i].lo != b.base.axes[i].lo ||
        a.base.axes[i].hi != b.base.axes[i].hi)
      throw std::invalid_argument("direct_sum: base mismatch");
  if (a.structure != b.structure)
    throw std::invalid_argument("direct_sum: structure mismatch");

  BundleWithConnection s;
  s.rank = a.rank + b.rank;
  s.structure = a.structure;
  s.base = a.base;
  const long ra = a.rank, rb = b.rank;
  FormField theta;
  theta.domain = a.base;
  theta.degree = 1;
  theta.rows = theta.cols = s.rank;
  const int dim = a.base.dim();
  auto block = [ra, rb, dim](const FormValue& va, const FormValue& vb,
                             int degree) {
    FormValue out = FormValue::zero(dim, degree, ra + rb, ra + rb);
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
      if (!va.coeff.empty()) out.coeff[i].topLeftCorner(ra, ra) = va.coeff[i];
      if (!vb.coeff.empty())
        out.coeff[i].bottomRightCorner(rb, rb) = vb.coeff[i];
    }
    return out;
  };
  const FormField ta = a.gauge(0).theta, tb = b.gauge(0).theta;
  theta.eval = [ta, tb, block](const Coord& x) {
    return block(ta.eval(x), tb.eval(x), 1);
  };
  if (ta.analytic_d && tb.analytic_d) {
    FormField dtheta;
    dtheta.domain = a.base;
    dtheta.degree = 2;
    dtheta.rows = dtheta.cols = s.rank;
    dtheta.eval = [da = ta.analytic_d, db = tb.analytic_d,
                   block](const Coord& x) {
      return block(da->eval(x), db->eval(x), 2);
    };
    theta.analytic_d = std::make_shared<FormField>(std::move(dtheta));
  }
  s.gauges.push_back(GaugePatch{"sum", std::move(theta), nullptr});
  return s;
}

BundleWithConnection pullback_bundle(const BundleWithConnection& b,
                                     const SmoothMap& map,
                                     const ChartDomain& new_base) {
  BundleWithConnection p;
  p.rank = b.rank;
  p.structure = b.structure;
  p.base = new_base;
  for (const auto& g : b.gauges) {
    GaugePatch q;
    q.name = g.name;
    q.theta = pullback(g.theta, map, new_base);
    if (g.region) {
      q.region = [r = g.region, m = map.eval](const Coord& y) {
        return r(m(y));
      };
    }
    p.gauges.push_back(std::move(q));
  }
  for (const auto& t : b.transitions) {
    GaugeTransition u;
    u.from = t.from;
    u.to = t.to;
    u.g = pullback(t.g, map, new_base);
    p.transitions.push_back(std::move(u));
  }
  return p;
}

namespace {

Mat inverse_checked(const Mat& g, const Coord& x) {
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "gauge_transform: singular matrix at (";
    for (std::size_t i = 0; i < x.size(); ++i)
      os << (i ? ", " : "") << x[i];
    os << ")";
    throw std::runtime_error(os.str());
  }
  return lu.inverse();
}

}  // namespace

BundleWithConnection gauge_transform(const BundleWithConnection& b,
                                     const FormField& g) {
  if (g.rows != b.rank || g.cols != b.rank || g.degree != 0)
    throw std::invalid_argument("gauge_transform: need an r x r 0-form");
  BundleWithConnection out = b;
  out.gauges.clear();
  for (const auto& patch : b.gauges) {
    GaugePatch q;
    q.name = patch.name;
    q.region = patch.region;
    FormField theta;
    theta.domain = b.base;
    theta.degree = 1;
    theta.rows = theta.cols = b.rank;
    theta.eval = [g, t = patch.theta](const Coord& x) {
      const Mat gv = g.eval(x).coeff[0];
      const Mat gi = inverse_checked(gv, x);
      const FormValue dg = exterior_derivative_value(g, x);
      // g theta g^-1 - dg g^-1
      FormValue v = wedge(FormValue::scalar(dg.dim, gv),
                          wedge(t.eval(x), FormValue::scalar(dg.dim, gi)));
      return add(v, scale(-1.0, wedge(dg, FormValue::scalar(dg.dim, gi))));
    };
    q.theta = std::move(theta);
    out.gauges.push_back(std::move(q));
  }
  // The transformed bundle keeps no transitions: tests act on single gauges.
  out.transitions.clear();
  return out;
}

Mat parallel_transport(const BundleWithConnection& b,
                       const GeometricCycle& loop, int gauge, int steps) {
  if (loop.components.size() != 1)
    throw std::invalid_argument("parallel_transport: need a single loop");
  const CycleComponent& c = loop.components.front();
  if (c.source.dim() != 1)
    throw std::invalid_argument("parallel_transport: loop must be 1-dimensional");
  const GaugePatch& patch = b.gauge(gauge);
  const FormField theta_loop = pullback(patch.theta, c.map, c.source);
  const Axis& ax = c.source.axes[0];
  const int n = std::max(steps, 4096);
  const double h = (ax.hi - ax.lo) / n;
  const bool forward = c.orientation >= 0;

  auto coeff = [&](double t) -> Mat {
    Coord p{t};
    if (!patch.contains(c.map.eval(p)))
      throw std::runtime_error(
          "parallel_transport: loop leaves the gauge region and no transition "
          "is supplied at the crossing");
    return theta_loop.eval(p).coeff[0];
  };
  // dU/dt = -A(t) U along the loop, traversed per orientation.
  auto rhs = [&](double t, const Mat& u) -> Mat {
    const double s = forward ? t : ax.hi + ax.lo - t;
    Mat a = coeff(s);
    if (!forward) a = -a;
    return -a * u;
  };
  Mat u = Mat::Identity(b.rank, b.rank);
  double t = ax.lo;
  for (int i = 0; i < n; ++i) {
    const Mat k1 = rhs(t, u);
    const Mat k2 = rhs(t + h / 2, u + (h / 2) * k1);
    const Mat k3 = rhs(t + h / 2, u + (h / 2) * k2);
    const Mat k4 = rhs(t + h, u + h * k3);
    u += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return u;
}

}  // namespace chernforge

#include "chernforge/forms.hpp"

#include <cmath>
#include <stdexcept>

#include "chernforge/parallel.hpp"

namespace chernforge {

FormField zero_form(const ChartDomain& domain, int degree, long rows,
                    long cols) {
  FormField f;
  f.domain = domain;
  f.degree = degree;
  f.rows = rows;
  f.cols = cols;
  const int dim = domain.dim();
  f.eval = [dim, degree, rows, cols](const Coord&) {
    return FormValue::zero(dim, degree, rows, cols);
  };
  return f;
}

FormField constant_form(const ChartDomain& domain, const Mat& value) {
  FormField f;
  f.domain = domain;
  f.degree = 0;
  f.rows = value.rows();
  f.cols = value.cols();
  const int dim = domain.dim();
  f.eval = [dim, value](const Coord&) { return FormValue::scalar(dim, value); };
  f.analytic_d = std::make_shared<FormField>(
      zero_form(domain, 1, value.rows(), value.cols()));
  return f;
}

FormField constant_form(const ChartDomain& domain,
                        std::complex<double> value) {
  Mat m(1, 1);
  m(0, 0) = value;
  return constant_form(domain, m);
}

FormField coordinate_differential(const ChartDomain& domain, int axis) {
  const int dim = domain.dim();
  if (axis < 0 || axis >= dim)
    throw std::invalid_argument("coordinate_differential: axis out of range");
  FormField f;
  f.domain = domain;
  f.degree = 1;
  f.eval = [dim, axis](const Coord&) {
    FormValue v = FormValue::zero(dim, 1);
    v.coeff[axis](0, 0) = 1.0;
    return v;
  };
  f.analytic_d = std::make_shared<FormField>(zero_form(domain, 2));
  return f;
}

namespace {

bool same_domain(const ChartDomain& a, const ChartDomain& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.axes[i].lo != b.axes[i].lo || a.axes[i].hi != b.axes[i].hi)
      return false;
  }
  return true;
}

}  // namespace

FormField wedge(const FormField& a, const FormField& b) {
  if (!same_domain(a.domain, b.domain))
    throw std::invalid_argument("wedge: domain mismatch");
  if (a.degree + b.degree > a.domain.dim())
    throw std::invalid_argument("wedge: degree overflow");
  if (a.cols != b.rows)
    throw std::invalid_argument("wedge: matrix shapes not composable");
  FormField f;
  f.domain = a.domain;
  f.degree = a.degree + b.degree;
  f.rows = a.rows;
  f.cols = b.cols;
  f.eval = [ea = a.eval, eb = b.eval](const Coord& x) {
    return wedge(ea(x), eb(x));
  };
  return f;
}

FormField add(const FormField& a, const FormField& b) {
  if (!same_domain(a.domain, b.domain))
    throw std::invalid_argument("add: domain mismatch");
  if (a.degree != b.degree || a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("add: shape mismatch");
  FormField f;
  f.domain = a.domain;
  f.degree = a.degree;
  f.rows = a.rows;
  f.cols = a.cols;
  f.eval = [ea = a.eval, eb = b.eval](const Coord& x) {
    return add(ea(x), eb(x));
  };
  if (a.analytic_d && b.analytic_d)
    f.analytic_d =
        std::make_shared<FormField>(add(*a.analytic_d, *b.analytic_d));
  return f;
}

FormField scale(std::complex<double> s, const FormField& a) {
  FormField f = a;
  f.eval = [s, ea = a.eval](const Coord& x) { return scale(s, ea(x)); };
  if (a.analytic_d)
    f.analytic_d = std::make_shared<FormField>(scale(s, *a.analytic_d));
  return f;
}

FormField trace(const FormField& a) {
  FormField f;
  f.domain = a.domain;
  f.degree = a.degree;
  f.rows = 1;
  f.cols = 1;
  f.eval = [ea = a.eval](const Coord& x) { return trace(ea(x)); };
  if (a.analytic_d)
    f.analytic_d = std::make_shared<FormField>(trace(*a.analytic_d));
  return f;
}

FormValue partial_derivative_value(const FormField& a, int axis,
                                   const Coord& x) {
  const Axis& ax = a.domain.axes[axis];
  const double h = (ax.hi - ax.lo) / (8.0 * ax.res);
  auto stencil = [&](double step) {
    auto at = [&](double dx) {
      Coord p = x;
      p[axis] += dx;
      return a.eval(p);
    };
    FormValue v = add(scale(-1.0, at(2 * step)), scale(8.0, at(step)));
    v = add(v, scale(-8.0, at(-step)));
    v = add(v, at(-2 * step));
    return scale(1.0 / (12.0 * step), v);
  };
  // One Richardson step on the 4th-order stencil.
  FormValue d_h = stencil(h), d_h2 = stencil(h / 2);
  return scale(1.0 / 15.0, add(scale(16.0, d_h2), scale(-1.0, d_h)));
}

FormValue exterior_derivative_value(const FormField& a, const Coord& x) {
  if (a.analytic_d) return a.analytic_d->eval(x);
  const int dim = a.domain.dim();
  const int p = a.degree;
  std::vector<FormValue> partials(dim);
  for (int i = 0; i < dim; ++i) partials[i] = partial_derivative_value(a, i, x);
  FormValue out = FormValue::zero(dim, p + 1, a.rows, a.cols);
  const auto& ks = multi_indices(dim, p + 1);
  for (std::size_t kr = 0; kr < ks.size(); ++kr) {
    const auto& K = ks[kr];
    for (int m = 0; m <= p; ++m) {
      std::vector<int> rest;
      rest.reserve(p);
      for (int j = 0; j <= p; ++j)
        if (j != m) rest.push_back(K[j]);
      const int r = multi_index_rank(dim, rest);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      out.coeff[kr] += sign * partials[K[m]].coeff[r];
    }
  }
  return out;
}

FormField exterior_derivative(const FormField& a) {
  if (a.degree >= a.domain.dim())
    throw std::invalid_argument("exterior_derivative: top-degree input");
  if (a.analytic_d) return *a.analytic_d;
  FormField f;
  f.domain = a.domain;
  f.degree = a.degree + 1;
  f.rows = a.rows;
  f.cols = a.cols;
  f.eval = [a](const Coord& x) { return exterior_derivative_value(a, x); };
  return f;
}

namespace {

double minor_det(const Eigen::MatrixXd& J, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  const int p = static_cast<int>(rows.size());
  if (p == 0) return 1.0;
  if (p == 1) return J(rows[0], cols[0]);
  if (p == 2)
    return J(rows[0], cols[0]) * J(rows[1], cols[1]) -
           J(rows[0], cols[1]) * J(rows[1], cols[0]);
  Eigen::MatrixXd M(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) M(i, j) = J(rows[i], cols[j]);
  return M.determinant();
}

}  // namespace

FormField pullback(const FormField& a, const SmoothMap& map,
                   const ChartDomain& source) {
  if (map.target_dim != a.domain.dim())
    throw std::invalid_argument("pullback: map does not land in the domain");
  FormField f;
  f.domain = source;
  f.degree = a.degree;
  f.rows = a.rows;
  f.cols = a.cols;
  const int sd = source.dim();
  const int p = a.degree;
  if (p > sd) {
    // Overdegree forms pull back to zero on a lower-dimensional source.
    f.eval = [sd, p](const Coord&) {
      FormValue v;
      v.dim = sd;
      v.degree = p;
      return v;
    };
    return f;
  }
  f.eval = [a, map, source, sd, p](const Coord& y) {
    const Coord x = map.eval(y);
    const FormValue va = a.eval(x);
    const Eigen::MatrixXd J = map_jacobian(map, source, y);
    FormValue out = FormValue::zero(sd, p, a.rows, a.cols);
    if (va.is_universal_zero() || va.coeff.empty()) return out;
    const auto& src_idx = multi_indices(sd, p);
    const auto& dst_idx = multi_indices(a.domain.dim(), p);
    for (std::size_t ir = 0; ir < src_idx.size(); ++ir)
      for (std::size_t kr = 0; kr < dst_idx.size(); ++kr) {
        const double det = minor_det(J, dst_idx[kr], src_idx[ir]);
        if (det != 0.0) out.coeff[ir] += det * va.coeff[kr];
      }
    return out;
  };
  return f;
}

std::complex<double> integrate_component(const FormField& a,
                                         const CycleComponent& c) {
  if (a.rows != 1 || a.cols != 1)
    throw std::invalid_argument("integrate: matrix-valued integrand, trace first");
  if (a.degree != c.source.dim())
    throw std::invalid_argument("integrate: degree does not match cycle dimension");
  const FormField pulled = pullback(a, c.map, c.source);
  const auto rule = quadrature_rule(c.source);
  std::vector<std::complex<double>> vals(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const FormValue v = pulled.eval(rule[i].x);
    vals[i] = (v.coeff.empty() ? std::complex<double>(0.0) : v.coeff[0](0, 0)) *
              rule[i].w;
  });
  return c.orientation * pairwise_sum(vals);
}

std::complex<double> integrate(const FormField& a, const GeometricCycle& z) {
  std::complex<double> s = 0.0;
  for (const auto& c : z.components) s += integrate_component(a, c);
  return s;
}

std::complex<double> integrate(const FormField& a, const BoundedChain& c) {
  CycleComponent comp;
  comp.source = c.source;
  comp.map = c.map;
  comp.orientation = c.orientation;
  return integrate_component(a, comp);
}

}  // namespace chernforge

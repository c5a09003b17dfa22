#pragma once

#include <memory>

#include "chernforge/mesh.hpp"

namespace chernforge {

/// Matrix-valued differential form on a chart domain, represented by a
/// closed-form pointwise evaluator. Quadrature and finite differencing happen
/// at call sites, never by sampling onto a grid.
class FormField {
 public:
  ChartDomain domain;
  int degree = 0;
  long rows = 1, cols = 1;
  std::function<FormValue(const Coord&)> eval;
  /// Analytic exterior derivative, preferred over finite differences when set.
  std::shared_ptr<const FormField> analytic_d;

  FormValue operator()(const Coord& x) const { return eval(x); }
};

FormField zero_form(const ChartDomain& domain, int degree, long rows = 1,
                    long cols = 1);
FormField constant_form(const ChartDomain& domain, const Mat& value);
FormField constant_form(const ChartDomain& domain, std::complex<double> value);
/// The coordinate 1-form dx_axis.
FormField coordinate_differential(const ChartDomain& domain, int axis);

/// Standard wedge with shuffle signs; matrix product on values. Throws on
/// domain mismatch and on degree overflow.
FormField wedge(const FormField& a, const FormField& b);
FormField add(const FormField& a, const FormField& b);
FormField scale(std::complex<double> s, const FormField& a);
FormField trace(const FormField& a);

/// Exterior derivative: analytic evaluator when supplied, otherwise 4th-order
/// central differences with step (hi-lo)/(8 res), Richardson-extrapolated
/// once. Throws on top-degree input.
FormField exterior_derivative(const FormField& a);

/// Pointwise directional-derivative helper used by exterior_derivative and by
/// the connection machinery: d/dx_i of a's coefficients at x.
FormValue partial_derivative_value(const FormField& a, int axis,
                                   const Coord& x);
/// Exterior-derivative value at a point (finite differences or analytic).
FormValue exterior_derivative_value(const FormField& a, const Coord& x);

/// Pullback along a smooth map into a's domain; coefficients transform by
/// Jacobian minors. Degrees exceeding the source dimension give the zero form.
FormField pullback(const FormField& a, const SmoothMap& map,
                   const ChartDomain& source);

std::complex<double> integrate(const FormField& a, const GeometricCycle& z);
std::complex<double> integrate(const FormField& a, const BoundedChain& c);
/// Integral over a single parametrized component.
std::complex<double> integrate_component(const FormField& a,
                                         const CycleComponent& c);

}  // namespace chernforge

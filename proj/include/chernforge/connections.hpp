#pragma once

#include <string>

#include "chernforge/forms.hpp"

namespace chernforge {

enum class StructureGroup { Unitary, SpecialOrthogonal };

/// Connection data in one gauge: an r x r 1-form valid on a coordinate region
/// of the base (default: everywhere).
struct GaugePatch {
  std::string name;
  FormField theta;
  std::function<bool(const Coord&)> region;  // null = whole chart

  bool contains(const Coord& x) const { return !region || region(x); }
};

/// Transition between two gauges: theta_to = g theta_from g^-1 - dg g^-1 on
/// the overlap. g is an invertible matrix-valued 0-form.
struct GaugeTransition {
  int from = 0, to = 0;
  FormField g;
};

/// Rank-r vector bundle presented in gauge charts over a chart domain.
struct BundleWithConnection {
  long rank = 1;
  StructureGroup structure = StructureGroup::Unitary;
  ChartDomain base;
  std::vector<GaugePatch> gauges;
  std::vector<GaugeTransition> transitions;

  const GaugePatch& gauge(int i) const;
};

/// Curvature 2-form of the chosen gauge: Omega = d theta + theta ^ theta.
FormField curvature(const BundleWithConnection& b, int gauge = 0);
FormValue curvature_value(const FormField& theta, const Coord& x);

/// Block-diagonal sum over a common base (gauge 0 of each side).
BundleWithConnection direct_sum(const BundleWithConnection& a,
                                const BundleWithConnection& b);

/// Pullback along a map into the base: theta -> map^* theta gauge-wise.
BundleWithConnection pullback_bundle(const BundleWithConnection& b,
                                     const SmoothMap& map,
                                     const ChartDomain& new_base);

/// theta -> g theta g^-1 - dg g^-1 applied to every gauge. Throws with the
/// sample location if g is singular somewhere it gets evaluated.
BundleWithConnection gauge_transform(const BundleWithConnection& b,
                                     const FormField& g);

/// Holonomy around a 1-dimensional loop lying in a single gauge region,
/// classical RK4 with at least `steps` steps.
Mat parallel_transport(const BundleWithConnection& b,
                       const GeometricCycle& loop, int gauge = 0,
                       int steps = 4096);

/// Freed-Lott style generator: a unitary bundle plus odd forms; phi[j-1] is
/// the degree 2j-1 component and must carry an analytic derivative.
struct FLGenerator {
  BundleWithConnection bundle;
  std::vector<FormField> phi;
};

}  // namespace chernforge

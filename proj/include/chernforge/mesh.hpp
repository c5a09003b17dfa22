#pragma once

#include <functional>
#include <optional>
#include <string>

#include "chernforge/formvalue.hpp"

namespace chernforge {

/// One coordinate axis of a chart box. Periodic axes identify lo with hi;
/// a degenerate end collapses to measure zero in the target (sphere poles).
struct Axis {
  double lo = 0.0, hi = 1.0;
  int res = 8;
  bool periodic = false;
  bool lo_degenerate = false, hi_degenerate = false;
};

struct ChartDomain {
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  double volume() const;
  /// True when every axis is periodic or has both ends degenerate, so the
  /// domain presents a closed manifold.
  bool closed() const;
  void validate() const;

  static ChartDomain box(std::vector<Axis> axes);
  /// Circle [0, 2pi), periodic.
  static ChartDomain circle(int res);
  /// Point domain (dimension 0).
  static ChartDomain point();
};

struct QuadraturePoint {
  Coord x;
  double w = 1.0;
};

/// Tensor-product rule: trapezoidal nodes on periodic axes, Gauss-Legendre on
/// the rest. Weights sum to the domain volume.
std::vector<QuadraturePoint> quadrature_rule(const ChartDomain& domain);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

/// Smooth map between chart coordinates, with optional analytic Jacobian
/// (target_dim x source_dim). Without one, the Jacobian is taken by 4th-order
/// central differences with step tied to the source resolution.
struct SmoothMap {
  int source_dim = 0, target_dim = 0;
  std::function<Coord(const Coord&)> eval;
  std::function<Eigen::MatrixXd(const Coord&)> jacobian;

  static SmoothMap identity(int dim);
  static SmoothMap constant(int source_dim, Coord value);
  static SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);
};

Eigen::MatrixXd map_jacobian(const SmoothMap& map, const ChartDomain& source,
                             const Coord& y);

/// Smooth invertible frame of a pulled-back bundle over a cycle source (a
/// matrix-valued function of source coordinates), with optional analytic
/// differential (a 1-form value per point).
struct FrameField {
  long rank = 1;
  std::function<Mat(const Coord&)> eval;
  std::function<FormValue(const Coord&)> analytic_d;  // optional

  static FrameField identity(long rank);
};

/// One parametrized piece of a cycle: a closed source box mapped into a
/// target chart, with orientation, and (optionally) a trivialization frame
/// expressed in the given gauge of whatever bundle the cycle is paired with.
struct CycleComponent {
  ChartDomain source;
  SmoothMap map;
  double orientation = 1.0;
  std::optional<FrameField> frame;
  int gauge = 0;
};

/// Disjoint union of components, standing in for a smooth singular cycle.
struct GeometricCycle {
  std::vector<CycleComponent> components;

  int dimension() const;
  static GeometricCycle single(CycleComponent c);
};

struct BoundedChain {
  ChartDomain source;
  SmoothMap map;
  double orientation = 1.0;
};

/// Oriented union of facet cycles at free (non-periodic, non-degenerate...
/// degenerate ends included, they are thin) axis ends, outward-normal-first
/// convention. Throws if every axis is closed.
GeometricCycle boundary(const BoundedChain& chain);

GeometricCycle reversed(GeometricCycle z);
GeometricCycle with_frame(GeometricCycle z, const FrameField& frame,
                          int gauge = 0);

/// S^1 x X with the fiber circle as axis 0.
ChartDomain product_with_circle(const ChartDomain& x, int fiber_res);
/// Product cycle S^1 x z (fiber first); per-component orientation is
/// fiber_orientation * component orientation.
GeometricCycle product_with_circle(const GeometricCycle& z, int fiber_res,
                                   double fiber_orientation = 1.0);

}  // namespace chernforge

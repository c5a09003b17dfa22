#pragma once

#include "chernforge/charforms.hpp"

namespace chernforge {

/// Cheeger-Simons style differential character of the given degree: a closed
/// curvature form plus an R/Z-valued evaluation on closed cycles of dimension
/// degree - 1. Values are canonicalized to [0, 1).
struct DifferentialCharacter {
  int degree = 2;
  FormField curvature;
  std::function<double(const GeometricCycle&)> evaluate;
};

/// Canonical representative in [0, 1).
double frac_unit(double x);
/// min(|a-b|, 1-|a-b|) after reduction mod 1.
double circle_distance(double a, double b);

/// i2: evaluation is the reduced integral of alpha, curvature is d alpha.
DifferentialCharacter from_form(const FormField& alpha);

/// The k-th differential Chern class of a unitary bundle. Cycles must carry a
/// trivialization frame per component; evaluation transgresses from the flat
/// connection of the frame to the pulled-back connection.
DifferentialCharacter differential_chern(const BundleWithConnection& b, int k);
DifferentialCharacter differential_pontryagin(const BundleWithConnection& b,
                                              int k);
DifferentialCharacter differential_euler(const BundleWithConnection& b);

/// The curvature form delta_1.
const FormField& delta1(const DifferentialCharacter& f);

/// Curvature periods over closed cycles, rounded to integers; throws naming
/// the offending cycle when a period is farther than 0.1 from an integer.
std::vector<long> delta2_periods(const DifferentialCharacter& f,
                                 const std::vector<GeometricCycle>& basis);

/// Sum of characters of equal degree.
DifferentialCharacter character_sum(const DifferentialCharacter& a,
                                    const DifferentialCharacter& b);

/// Freed-Lott variant: curvature s_k(ch + d phi), evaluation is the plain
/// differential Chern class plus the odd-form correction integral.
DifferentialCharacter fl_differential_chern(const FLGenerator& gen, int k);

/// Clutching-style suspension of g: X -> U(r): the trivial bundle on
/// S^1 x X with theta = rho(s) g^-1 dg, glued at the seam by g. The seam
/// transition is stored as transitions[0].
BundleWithConnection suspend(const FrameField& g, const ChartDomain& x_domain,
                             int fiber_res = 64);

/// Integration of the ds-component over the circle factor (axis 0).
FormField fiber_integrate_form(const FormField& w);

/// Builds a trivialization of a product cycle S^1 x z from a base component.
using ProductFrameBuilder =
    std::function<std::optional<FrameField>(const CycleComponent&)>;

/// Integration along the fiber of S^1 x X -> X in differential cohomology;
/// curvature integrates the form, evaluation uses the product cycle with the
/// orientation that makes delta_1 commute with fiber integration.
DifferentialCharacter fiber_integrate_character(
    const DifferentialCharacter& f, int fiber_res = 64,
    ProductFrameBuilder frame_builder = nullptr);

/// Odd classes: c-hat^odd_{2k+1} = fiber integration of c-hat_{k+1} of the
/// suspension. Point cycles get their fiber-loop trivialization built
/// automatically from g; higher-dimensional cycles must carry one.
DifferentialCharacter odd_differential_chern(const FrameField& g,
                                             const ChartDomain& x_domain,
                                             int k, int fiber_res = 64);

}  // namespace chernforge

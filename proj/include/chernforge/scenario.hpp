#pragma once

#include <map>
#include <optional>
#include <string>

#include "chernforge/diffchar.hpp"
#include "chernforge/report.hpp"

namespace chernforge {

/// Numeric literal with pi arithmetic: "0.5", "pi", "2pi/3", "-pi/6", "3/4".
double parse_number(const std::string& text);

/// "name:key=val,key=val" (cycles, bundles) and
/// "kind:key=val,bundle=name:key=val,..." (characters). Throws
/// std::invalid_argument with the offending position on parse errors.
struct ParsedSpec {
  std::string name;
  std::map<std::string, double> params;
  std::string bundle;  // raw sub-spec, characters only
};
ParsedSpec parse_spec(const std::string& text, bool allow_bundle);

/// Registered geometry: bundles by name + parameters.
/// Names: flat, monopole, ts2, torus-flat, instanton, u2-fourier,
/// u2-fourier-4d, so3-fourier, suspend-u1.
BundleWithConnection make_bundle(const std::string& spec, int resolution);

/// Registered cycles/chains by name + parameters. Cycle names: s2, latitude,
/// cap-boundary, t2, t2-x-loop, t2-y-loop, t2-diag-loop, t3, t3-deformed, s4,
/// s1-point, t2-point, thin-loop. Chain names: cap, t2-strip.
GeometricCycle make_cycle(const std::string& spec, int resolution);
BoundedChain make_chain(const std::string& spec, int resolution);

/// Builds the character named by the spec ("chern:k=1,bundle=monopole:n=1",
/// "euler,bundle=ts2", ...) and evaluates it on the cycle.
double evaluate_spec(const std::string& character_spec,
                     const std::string& cycle_spec, int resolution = 0);

struct ScenarioInfo {
  std::string name;
  std::string description;
  int default_resolution;
};
const std::vector<ScenarioInfo>& scenario_catalog();

/// Runs a registered scenario. Overrides: scenario parameters plus the
/// reserved keys "resolution" and "tolerance" (the latter replaces every
/// check tolerance). Unknown scenario names throw std::invalid_argument;
/// check execution failures are recorded in the report, not thrown.
Report run_scenario(const std::string& name,
                    const std::map<std::string, double>& overrides = {});

}  // namespace chernforge

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chernforge/scenario.hpp"

namespace {

int parse_overrides(const std::vector<std::string>& sets,
                    std::map<std::string, double>& out) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got \"" << s << "\"\n";
      return 2;
    }
    try {
      out[s.substr(0, eq)] = chernforge::parse_number(s.substr(eq + 1));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}

int emit_report(const chernforge::Report& report, const std::string& out_path) {
  std::cout << chernforge::report_summary(report);
  if (!out_path.empty()) {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    os << chernforge::report_to_json(report);
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characteristic forms, transgression forms and differential "
               "characters on scenario bundles"};
  app.set_config("--config");
  app.fallthrough();
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-scenarios", "list registered scenarios");

  std::string run_name, out_path;
  std::vector<std::string> sets;
  int resolution = 0;
  auto* run = app.add_subcommand("run", "run one scenario and report");
  run->add_option("name", run_name, "scenario name")->required();
  run->add_option("--set", sets, "override a scenario parameter (key=value)");
  run->add_option("--resolution", resolution, "principal resolution override");
  run->add_option("--out", out_path, "write the JSON report to this file");

  auto* verify = app.add_subcommand("verify-all", "run every scenario");
  std::string verify_out;
  int verify_resolution = 0;
  verify->add_option("--out", verify_out,
                     "write concatenated JSON reports to this file");
  verify->add_option("--resolution", verify_resolution,
                     "principal resolution override for every scenario");

  std::string char_spec, cycle_spec;
  int eval_resolution = 0;
  auto* eval = app.add_subcommand("eval", "evaluate a character on a cycle");
  eval->add_option("character", char_spec,
                   "character spec, e.g. chern:k=1,bundle=monopole:n=1")
      ->required();
  eval->add_option("cycle", cycle_spec,
                   "cycle spec, e.g. latitude:theta0=pi/2")
      ->required();
  eval->add_option("--resolution", eval_resolution, "resolution override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& s : chernforge::scenario_catalog())
        std::cout << s.name << "  (default resolution " << s.default_resolution
                  << ")\n    " << s.description << "\n";
      return 0;
    }
    if (run->parsed()) {
      std::map<std::string, double> overrides;
      if (int rc = parse_overrides(sets, overrides)) return rc;
      if (resolution > 0)
        overrides["resolution"] = static_cast<double>(resolution);
      return emit_report(chernforge::run_scenario(run_name, overrides),
                         out_path);
    }
    if (verify->parsed()) {
      bool all_pass = true;
      std::string json;
      for (const auto& s : chernforge::scenario_catalog()) {
        std::map<std::string, double> overrides;
        if (verify_resolution > 0)
          overrides["resolution"] = static_cast<double>(verify_resolution);
        const auto report = chernforge::run_scenario(s.name, overrides);
        std::cout << chernforge::report_summary(report) << "\n";
        json += chernforge::report_to_json(report);
        all_pass = all_pass && report.pass();
      }
      if (!verify_out.empty()) {
        std::ofstream os(verify_out, std::ios::binary);
        if (!os) {
          std::cerr << "error: cannot write " << verify_out << "\n";
          return 2;
        }
        os << json;
      }
      return all_pass ? 0 : 1;
    }
    if (eval->parsed()) {
      const double v =
          chernforge::evaluate_spec(char_spec, cycle_spec, eval_resolution);
      std::cout << v << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

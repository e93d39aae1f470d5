// sdlab <experiment> --config <path> [--set key=value]...
// Exit: 0 thresholds met, 2 threshold miss, 1 configuration or numerical error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/report.hpp"
#include "sdl/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Singular-weight Dirichlet form experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  for (const std::string& name : sdl::runner::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "flat key = value config file")->required();
    sub->add_option("--set", overrides, "override one key (key=value); repeatable");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    sdl::runner::Config cfg = sdl::runner::Config::defaults();
    cfg.load_file(config_path);
    for (const std::string& o : overrides) cfg.apply_override(o);

    const sdl::runner::Report report = sdl::runner::run_experiment(experiment, cfg);
    const auto files = sdl::runner::write_report(report, cfg, sdl::runner::utc_timestamp());
    std::cout << experiment << ": " << (report.passed ? "passed" : "FAILED") << "\n";
    for (const std::string& f : report.failures) std::cout << "  - " << f << "\n";
    std::cout << "  csv:  " << files.csv.string() << "\n  json: " << files.json.string() << "\n";
    return report.passed ? 0 : 2;
  } catch (const sdl::Error& e) {
    std::cerr << "sdlab " << experiment << ": " << e.what() << "\n";
    return 1;
  }
}

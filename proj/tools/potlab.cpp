#include <CLI11.hpp>

#include "potlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"potlab: potentials, capacities, and differentiability diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", config_path, "config file (JSON)")->required();
  run->add_option("-o,--output-dir", output_dir,
                  "override the config's output directory");

  std::string validate_path;
  auto* validate =
      app.add_subcommand("validate", "schema and budget check, no execution");
  validate->add_option("config", validate_path, "config file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return potlab::run_config(config_path, output_dir);
  return potlab::validate_config(validate_path);
}

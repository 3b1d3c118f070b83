#include "qdm/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"qdm-sim: quantum dot molecule / cavity mode simulator"};
  app.require_subcommand(1);

  qdm::cli::RunManifest manifest;
  std::string solver;
  double dt = 0.0;
  double t_end = 0.0;

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--config", manifest.config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", manifest.out_dir, "Output directory")->required();
    sub->add_option("--solver", solver, "analytic, euler or rk4 (overrides the config)")
        ->check(CLI::IsMember({"analytic", "euler", "rk4"}));
    sub->add_option("--dt", dt, "Time step in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--t-end", t_end, "End time in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", manifest.jobs, "Parallel workers for independent shells")->check(CLI::PositiveNumber);
  };

  for (const char* name : {"simulate", "emit-equations", "concurrence", "spectrum"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " mode");
    add_run_options(sub);
  }

  std::filesystem::path lhs;
  std::filesystem::path rhs;
  double tolerance = 1e-6;
  auto* cmp = app.add_subcommand("compare", "Compare two trajectory CSV files");
  cmp->add_option("a", lhs, "First trajectory")->required()->check(CLI::ExistingFile);
  cmp->add_option("b", rhs, "Second trajectory")->required()->check(CLI::ExistingFile);
  cmp->add_option("--tolerance", tolerance, "Maximum allowed absolute amplitude error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qdm::cli::kConfigError;
  }

  if (cmp->parsed()) return qdm::cli::compare_files(lhs, rhs, tolerance, std::cout);

  for (auto* sub : app.get_subcommands()) {
    manifest.mode = *qdm::cli::parse_mode(sub->get_name());
    if (sub->count("--solver") > 0) manifest.solver = solver;
    if (sub->count("--dt") > 0) manifest.dt = dt;
    if (sub->count("--t-end") > 0) manifest.t_end = t_end;
  }
  return qdm::cli::run(manifest, std::cerr);
}

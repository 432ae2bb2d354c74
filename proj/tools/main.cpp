// kneeopt: experiment runner for the knee-point optimizers.
//
//   kneeopt run --config exp.json [--out DIR] [--reps N] [--seed N] [--jobs N]
//   kneeopt summarize --out DIR
//   kneeopt plotdata --out DIR
//   kneeopt gen-scenario --mission ID [--seed N] --out FILE

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "kneeopt/experiment.hpp"
#include "kneeopt/mission.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Knee-point multi-objective optimizer experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;

  auto* run = app.add_subcommand("run", "Execute an experiment config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_option("--reps", reps, "Repetitions per variant")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--jobs", jobs, "Parallel repetitions (0 = all cores)");

  auto* summarize = app.add_subcommand("summarize", "Recompute tables from run artifacts");
  summarize->add_option("--out", out, "Artifact directory")->required();

  auto* plotdata = app.add_subcommand("plotdata", "Emit plot-ready tables");
  plotdata->add_option("--out", out, "Artifact directory")->required();

  int mission_id = 1;
  auto* gen = app.add_subcommand("gen-scenario", "Write a generated mission scenario");
  gen->add_option("--mission", mission_id, "Mission table row (1-12)")->check(CLI::Range(1, 12));
  gen->add_option("--seed", seed, "Scenario seed");
  gen->add_option("--out", out, "Scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = kneeopt::load_experiment_config(config_path);
      if (!out.empty()) cfg.output_dir = out;
      if (reps) cfg.repetitions = *reps;
      if (seed) cfg.base_seed = *seed;
      if (jobs) cfg.jobs = *jobs;
      const auto tables = kneeopt::run_experiment(cfg);
      std::cout << "wrote " << tables.runs.size() << " runs to " << cfg.output_dir.string() << "\n";
      for (const auto& row : tables.summary) {
        std::cout << row.config_id << ' ' << row.metric << ' ' << kneeopt::format_double(row.stats.mean) << " +- "
                  << kneeopt::format_double(row.stats.stddev) << "\n";
      }
    } else if (*summarize) {
      const auto tables = kneeopt::summarize(out);
      std::cout << "summarized " << tables.runs.size() << " runs in " << out << "\n";
    } else if (*plotdata) {
      kneeopt::emit_plot_data(out);
      std::cout << "wrote plot tables to " << out << "\n";
    } else if (*gen) {
      const auto spec = kneeopt::mission::mission_table_row(mission_id);
      kneeopt::mission::save_scenario(kneeopt::mission::generate_scenario(spec, seed.value_or(1)), out);
      std::cout << "wrote mission " << mission_id << " scenario to " << out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "kneeopt: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

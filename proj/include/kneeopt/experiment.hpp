#pragma once

// Batch harness: variants x repetitions of one problem, per-run artifacts,
// and comparison tables recomputed from those artifacts.
//
// Artifact layout under the output directory:
//   config.json                    resolved experiment config
//   scenario.json                  mission problems only
//   runs/<variant>/rep_<k>.json    run record with final front and trace
//   runs/<variant>/rep_<k>.csv     per-generation trace
//   per_run_metrics.csv, summary.csv, pvalues.csv, reference_fronts.csv
//   plot_series.csv, parallel_coordinates.csv   (plotdata)

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kneeopt/engine.hpp"
#include "kneeopt/metrics.hpp"
#include "kneeopt/mission.hpp"
#include "kneeopt/problem.hpp"

namespace kneeopt {

struct ProblemSelector {
  enum class Kind { kKnee, kMission, kScenarioFile };
  Kind kind = Kind::kKnee;
  std::size_t knee_n = 2;
  unsigned knee_k = 1;
  /// Mission table row; ignored when `mission_spec` is set.
  int mission_id = 1;
  std::optional<mission::MissionSpec> mission_spec;
  std::uint64_t scenario_seed = 1;
  std::filesystem::path scenario_path;

  std::string label() const;
};

struct VariantSpec {
  Variant variant = Variant::kPareto;
  double theta = 90.0;
  std::string id() const { return variant_id(variant, theta); }
};

/// Per-axis extremes used to normalize final fronts before hypervolume.
/// kSearchEnvelope spans every objective value the runs evaluated (the
/// running bounds each run records); kReferenceFront spans only the merged
/// final fronts.
enum class HvNormalization { kSearchEnvelope, kReferenceFront };

struct ExperimentConfig {
  ProblemSelector problem;
  std::vector<VariantSpec> variants;
  std::size_t repetitions = 30;
  std::size_t lambda = 200;
  std::size_t mu = 20;
  std::size_t tournament_size = 2;
  double mut_probability = 0.05;
  std::size_t stop_gen = 10;
  std::size_t max_gen = 300;
  double golden_tolerance = 1.0;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "results";
  /// Worker slots for repetitions; 0 lets the OpenMP runtime decide.
  std::size_t jobs = 0;
  HvNormalization normalization = HvNormalization::kSearchEnvelope;

  /// Throws std::invalid_argument on an empty variant list, zero repetitions,
  /// duplicate variant ids or an invalid algorithm setting.
  void validate() const;
  AlgorithmConfig algorithm(const VariantSpec& v, std::size_t repetition) const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

std::unique_ptr<Problem> make_problem(const ProblemSelector& sel);

nlohmann::json run_record_to_json(const RunRecord& rec, std::size_t repetition);

struct RunArtifact {
  std::string config_id;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t generations = 0;
  bool converged = false;
  std::vector<ObjectiveVector> front;  // usable members (see `usable_front`)
  std::size_t front_size = 0;          // all final-front members
};

/// Per-run scores after merging every variant's fronts into reference fronts.
struct ExperimentTables {
  std::vector<RunArtifact> runs;
  std::vector<RunMetrics> metrics;  // parallel to `runs`
  std::vector<SummaryRow> summary;
  struct PValue {
    std::string metric;
    std::string config_a;
    std::string config_b;
    double p_value = 1.0;
  };
  std::vector<PValue> p_values;
  Bounds normalization;
  std::vector<std::vector<ObjectiveVector>> reference_fronts;  // per repetition, raw objectives
};

/// Executes every variant x repetition and then `summarize`. Seeds are
/// base_seed + repetition. Throws before any run if the output directory
/// cannot be written.
ExperimentTables run_experiment(const ExperimentConfig& cfg);

/// Rebuilds all tables from the artifacts under `dir` and rewrites the CSV
/// files. Throws std::runtime_error listing missing artifacts.
ExperimentTables summarize(const std::filesystem::path& dir);

/// Writes plot_series.csv (mean per generation over the runs still alive,
/// with a count column) and parallel_coordinates.csv (normalized objectives
/// of every final-front member).
void emit_plot_data(const std::filesystem::path& dir);

/// Shortest round-trip decimal form; keeps CSV output byte-stable.
std::string format_double(double v);

}  // namespace kneeopt

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kneeopt/adaptation.hpp"
#include "kneeopt/archive.hpp"
#include "kneeopt/core.hpp"
#include "kneeopt/problem.hpp"

namespace kneeopt {

enum class Variant {
  kPareto,        // NSGA-II: cone fixed at 90 degrees
  kFixedAngle,    // KPNSGA-II: cone fixed at `theta`
  kSelfAdaptive,  // sKPNSGA-II: cone angle tuned by golden-section search
};

struct AlgorithmConfig {
  Variant variant = Variant::kPareto;
  double theta = 90.0;  // used by kFixedAngle only
  std::size_t lambda = 200;
  std::size_t mu = 20;
  std::size_t tournament_size = 2;
  double mut_probability = 0.05;
  std::size_t stop_gen = 10;
  std::size_t max_gen = 300;
  std::uint64_t seed = 1;
  double golden_tolerance = 1.0;  // degrees
  /// Overrides the problem's objective upper bounds when set.
  std::optional<ObjectiveVector> objective_upper_bounds;
  bool parallel_evaluation = true;

  void validate() const;
  SelectionConfig selection() const { return {lambda, mu, tournament_size}; }
  double initial_theta() const { return variant == Variant::kFixedAngle ? theta : 90.0; }
};

/// Short stable identifier: "pareto", "fixed_120", "self_adaptive".
std::string variant_id(Variant v, double theta);
std::string variant_id(const AlgorithmConfig& cfg);

struct GenerationRecord {
  std::size_t generation = 0;
  double theta = 90.0;  // angle the generation was ranked with
  double theta_a = 90.0;
  double theta_b = 180.0;
  std::size_t front_size = 0;
  double hypervolume = 0.0;  // knee front, normalized by the running bounds, ref = ones
  double online_hdist = 0.0;
  std::size_t evaluations = 0;  // cumulative
};

struct RunRecord {
  std::string problem;
  std::string variant;
  std::uint64_t seed = 0;
  std::vector<GenerationRecord> generations;
  /// Knee front of the last generation, one member per distinct objective
  /// vector.
  Population final_front;
  double final_theta = 90.0;
  std::size_t generations_to_converge = 0;
  bool converged = false;
  Bounds bounds;
  double wall_time = 0.0;  // seconds
};

/// Indices from `members` whose objective vectors have not appeared earlier
/// in the list.
std::vector<std::size_t> distinct_by_objectives(const Population& s, const std::vector<std::size_t>& members);

/// Runs the generational loop until the knee front stays unchanged for
/// `stop_gen` consecutive generations or `max_gen` generations have run.
/// Throws std::runtime_error if an individual fails to evaluate.
RunRecord run(const Problem& problem, const AlgorithmConfig& cfg);

}  // namespace kneeopt

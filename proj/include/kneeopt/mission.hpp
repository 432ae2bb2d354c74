#pragma once

// Multi-UAV mission-planning surrogate: tasks assigned to vehicles, ordered
// into routes, vehicles assigned to ground control stations, sensors chosen
// per task and a speed profile per flown leg. No-fly zones are folded into
// precomputed extra distances between task pairs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "kneeopt/problem.hpp"

namespace kneeopt::mission {

inline constexpr int kNumSensors = 3;  // camera, infrared, radar
inline constexpr std::uint32_t kMultiUavRequired = 2;

/// Profile 0 is slow, 1 is fast.
inline constexpr double kProfileSpeed[2] = {0.8, 1.0};
inline constexpr double kProfileFuel[2] = {0.75, 1.0};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Task {
  Point2 position;          // km
  double duration_min = 0;  // minutes of work on site
  bool multi_uav = false;
  int required_sensor = 0;
  friend bool operator==(const Task&, const Task&) = default;
};

struct Uav {
  Point2 base;                // km
  double speed_kmh = 100.0;
  double fuel_capacity_l = 0.0;
  double fuel_rate_lph = 0.0;
  double cost_rate_ph = 0.0;
  std::vector<int> sensors;   // sorted, unique
  bool carries(int sensor) const;
  friend bool operator==(const Uav&, const Uav&) = default;
};

struct Gcs {
  std::uint32_t capacity = 1;
  friend bool operator==(const Gcs&, const Gcs&) = default;
};

/// Extra route length between two tasks (either direction), standing in for
/// the detour around a no-fly zone.
struct NfzPenalty {
  std::size_t task_a = 0;
  std::size_t task_b = 0;
  double extra_km = 0.0;
  friend bool operator==(const NfzPenalty&, const NfzPenalty&) = default;
};

/// `before` must finish before `after` may start.
struct Dependency {
  std::size_t before = 0;
  std::size_t after = 0;
  friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct MissionScenario {
  std::vector<Task> tasks;
  std::vector<Uav> uavs;
  std::vector<Gcs> gcss;
  std::vector<NfzPenalty> nfz_penalties;
  std::vector<Dependency> dependencies;

  double leg_penalty(std::size_t a, std::size_t b) const;

  /// Throws std::invalid_argument if any structural invariant fails
  /// (sensor coverage, acyclic dependencies, index ranges).
  void validate() const;

  friend bool operator==(const MissionScenario&, const MissionScenario&) = default;
};

/// Feature counts of a scenario, one row of the mission table.
struct MissionSpec {
  std::size_t tasks = 0;
  std::size_t multi_uav_tasks = 0;
  std::size_t uavs = 0;
  std::size_t gcss = 0;
  std::size_t nfzs = 0;
  std::size_t dependencies = 0;
  friend bool operator==(const MissionSpec&, const MissionSpec&) = default;
};

/// The twelve benchmark missions, ids 1..12. Throws std::out_of_range.
MissionSpec mission_table_row(int mission_id);

/// Deterministic scenario with exactly the requested counts inside a
/// 100 x 100 km square. Throws std::invalid_argument for unsatisfiable counts.
MissionScenario generate_scenario(const MissionSpec& spec, std::uint64_t seed);

void to_json(nlohmann::json& j, const MissionScenario& sc);
void from_json(const nlohmann::json& j, MissionScenario& sc);
void to_json(nlohmann::json& j, const MissionSpec& spec);
void from_json(const nlohmann::json& j, MissionSpec& spec);

void save_scenario(const MissionScenario& sc, const std::filesystem::path& path);
MissionScenario load_scenario(const std::filesystem::path& path);

/// Decoded decision variables.
struct MissionGenome {
  std::vector<std::uint32_t> assignment;    // UAV index, or UAV bitmask for multi-UAV tasks
  std::vector<std::uint32_t> order;         // permutation: visiting rank of each task
  std::vector<std::uint32_t> gcs;           // per UAV
  std::vector<std::uint32_t> sensor;        // per task
  std::vector<std::uint32_t> leg_profile;   // per task, for the leg flown into it
  std::vector<std::uint32_t> return_profile;  // per UAV, for the leg back to base
  friend bool operator==(const MissionGenome&, const MissionGenome&) = default;
};

/// Set of UAV indices performing task `t`.
std::vector<std::size_t> assigned_uavs(const MissionGenome& g, const MissionScenario& sc, std::size_t t);

bool genome_valid(const MissionGenome& g, const MissionScenario& sc);
Genome encode(const MissionGenome& g);
MissionGenome decode(const Genome& g, const MissionScenario& sc);

/// Objective indices of `mission_evaluate`.
enum Objective : std::size_t {
  kCost = 0,
  kMakespan,
  kRisk,
  kUavCount,
  kFuel,
  kFlightTime,
  kDistance,
  kNumObjectives
};

/// Seven objectives plus a count of satisfied constraints. One constraint
/// per task (sensor carried and matching), per multi-UAV task (enough
/// vehicles), per GCS (capacity), per UAV (fuel) and per dependency
/// (realizable with the chosen routes). Violations are counted, never
/// repaired.
Fitness mission_evaluate(const MissionGenome& g, const MissionScenario& sc);

std::uint32_t mission_constraints_total(const MissionScenario& sc);

class MissionProblem final : public Problem {
 public:
  MissionProblem(MissionScenario sc, std::string label);

  const MissionScenario& scenario() const { return sc_; }

  std::string name() const override { return label_; }
  std::size_t num_objectives() const override { return kNumObjectives; }
  std::size_t num_constraints() const override { return mission_constraints_total(sc_); }
  ObjectiveVector objective_upper_bounds() const override;

  Genome random_genome(Rng& rng) const override;
  Fitness evaluate(const Genome& g) const override;
  bool valid(const Genome& g) const override;

  /// Per-allele uniform exchange; the visiting order moves as one whole
  /// permutation so both children stay permutations.
  std::pair<Genome, Genome> crossover(const Genome& p1, const Genome& p2, Rng& rng) const override;

  /// Each allele is redrawn from its domain with probability `prob`; with
  /// the same probability two visiting ranks are swapped.
  Genome mutate(const Genome& g, double prob, Rng& rng) const override;

 private:
  MissionScenario sc_;
  std::string label_;
};

}  // namespace kneeopt::mission

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace kneeopt {

/// Objective values of one solution. All objectives are minimized.
using ObjectiveVector = std::vector<double>;

using Rng = std::mt19937_64;

/// Decision vector. Real-coded problems use `reals`, combinatorial problems
/// use `ints`; a problem may use both.
struct Genome {
  std::vector<double> reals;
  std::vector<std::int32_t> ints;

  friend bool operator==(const Genome&, const Genome&) = default;
};

struct Fitness {
  ObjectiveVector objectives;
  std::uint32_t constraints_satisfied = 0;
  std::uint32_t constraints_total = 0;
  std::optional<std::uint32_t> rank;
  double sparsity = 0.0;

  bool feasible() const { return constraints_satisfied == constraints_total; }
};

struct Individual {
  Genome genome;
  std::optional<Fitness> fitness;

  bool evaluated() const { return fitness.has_value(); }
  const ObjectiveVector& objectives() const { return fitness->objectives; }
};

using Population = std::vector<Individual>;

/// Running per-objective extremes used to normalize objective vectors.
struct Bounds {
  ObjectiveVector max_p;
  ObjectiveVector min_p;

  std::size_t dimension() const { return max_p.size(); }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// max_p starts at zero and min_p at the supplied upper bounds, so the first
/// observation overwrites both.
Bounds bounds_init(std::size_t m, std::span<const double> upper);

/// Element-wise extremes update. Throws on a dimension mismatch or a
/// non-finite objective.
Bounds bounds_update(Bounds b, std::span<const double> f);
void bounds_update_inplace(Bounds& b, std::span<const double> f);

/// Affine map onto [0,1] per axis; a degenerate axis (max == min) maps to 0.
ObjectiveVector normalize(std::span<const double> f, const Bounds& b);

/// Constraint-count precedence applied ahead of any dominance test.
/// `less` means the first argument wins. Two feasible solutions, or two
/// infeasible ones with equal counts, are `equivalent` and fall through to
/// the dominance relation. Throws if the totals differ.
std::weak_ordering feasibility_compare(const Fitness& a, const Fitness& b);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace kneeopt

#pragma once

#include <cstddef>
#include <span>

#include "kneeopt/core.hpp"
#include "kneeopt/dominance.hpp"

namespace kneeopt {

struct SelectionConfig {
  std::size_t lambda = 200;
  std::size_t mu = 20;
  std::size_t tournament_size = 2;

  /// Throws std::invalid_argument unless 0 < mu < lambda and the tournament
  /// size is positive.
  void validate() const;
};

/// Crowded-comparison order: lower rank first, then larger sparsity.
/// Unranked members sort last.
bool crowded_less(const Individual& a, const Individual& b);

/// Crowding distance on normalized objectives for the members of `s` listed
/// in `members`. Per objective, the two extreme members get +infinity and
/// interior members accumulate the normalized gap between their neighbours.
void assign_sparsity(Population& s, std::span<const std::size_t> members, const Bounds& bounds);

/// Whole-population convenience form of the above.
Population assign_sparsity(Population front, const Bounds& bounds);

/// Environmental selection: admits whole non-domination levels while they
/// fit and truncates the overflowing level by sparsity, leaving exactly
/// `cfg.lambda` members. Smaller inputs are returned in input order with
/// ranks and sparsity assigned.
Population build_archive(Population s, const SelectionConfig& cfg, const ConeParams& c, const Bounds& bounds);

/// The `mu` best members in crowded-comparison order (stable).
Population select_elites(const Population& s, std::size_t mu);

/// k draws with replacement; the crowded-comparison best wins, earlier draws
/// win ties.
std::size_t tournament_select_index(const Population& s, std::size_t k, Rng& rng);
const Individual& tournament_select(const Population& s, std::size_t k, Rng& rng);

}  // namespace kneeopt

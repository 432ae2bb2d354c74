#pragma once

#include <string>
#include <utility>

#include "kneeopt/core.hpp"

namespace kneeopt {

/// A benchmark the engine can optimize: genome schema, fitness and the
/// per-allele variation operators that keep genomes inside the schema.
/// Implementations must be pure and thread-safe under concurrent `evaluate`.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t num_objectives() const = 0;
  virtual std::size_t num_constraints() const = 0;

  /// Per-objective upper bounds M_i, well above typical objective values.
  virtual ObjectiveVector objective_upper_bounds() const = 0;

  virtual Genome random_genome(Rng& rng) const = 0;

  /// Throws std::invalid_argument for a genome outside the schema.
  virtual Fitness evaluate(const Genome& g) const = 0;

  virtual bool valid(const Genome& g) const = 0;

  virtual std::pair<Genome, Genome> crossover(const Genome& p1, const Genome& p2, Rng& rng) const = 0;
  virtual Genome mutate(const Genome& g, double prob, Rng& rng) const = 0;
};

}  // namespace kneeopt

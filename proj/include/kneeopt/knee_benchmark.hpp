#pragma once

#include "kneeopt/problem.hpp"

namespace kneeopt {

/// Two-objective test problem with K knees on a curved front:
///
///   g(x)  = 1 + 9 * sum_{i>=2} x_i / (n - 1)
///   r(x1) = 5 + 10 (x1 - 0.5)^2 + cos(2 K pi x1) / K
///   f1 = g r sin(pi x1 / 2),  f2 = g r cos(pi x1 / 2)
///
/// with x in [0, 1]^n. The front is the curve r(x1) at g == 1.
class KneeBenchmark final : public Problem {
 public:
  KneeBenchmark(std::size_t n, unsigned k);

  std::size_t n() const { return n_; }
  unsigned k() const { return k_; }

  std::string name() const override;
  std::size_t num_objectives() const override { return 2; }
  std::size_t num_constraints() const override { return 0; }
  ObjectiveVector objective_upper_bounds() const override { return {100.0, 100.0}; }

  Genome random_genome(Rng& rng) const override;
  Fitness evaluate(const Genome& g) const override;
  bool valid(const Genome& g) const override;

  /// Uniform exchange: each allele swaps between the children with
  /// probability 1/2.
  std::pair<Genome, Genome> crossover(const Genome& p1, const Genome& p2, Rng& rng) const override;

  /// Each allele is redrawn uniformly from [0, 1] with probability `prob`.
  Genome mutate(const Genome& g, double prob, Rng& rng) const override;

 private:
  std::size_t n_;
  unsigned k_;
};

}  // namespace kneeopt

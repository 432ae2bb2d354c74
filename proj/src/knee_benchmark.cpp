#include "kneeopt/knee_benchmark.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kneeopt {

KneeBenchmark::KneeBenchmark(std::size_t n, unsigned k) : n_(n), k_(k) {
  if (n < 2) throw std::invalid_argument("knee benchmark needs at least 2 decision variables");
  if (k < 1) throw std::invalid_argument("knee benchmark needs at least one knee");
}

std::string KneeBenchmark::name() const {
  return "knee(n=" + std::to_string(n_) + ",K=" + std::to_string(k_) + ")";
}

Genome KneeBenchmark::random_genome(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Genome g;
  g.reals.resize(n_);
  for (auto& x : g.reals) x = u(rng);
  return g;
}

bool KneeBenchmark::valid(const Genome& g) const {
  if (g.reals.size() != n_ || !g.ints.empty()) return false;
  for (double x : g.reals) {
    if (!(x >= 0.0 && x <= 1.0)) return false;
  }
  return true;
}

Fitness KneeBenchmark::evaluate(const Genome& g) const {
  if (!valid(g)) throw std::invalid_argument("knee benchmark: genome outside [0,1]^n");
  const auto& x = g.reals;
  double tail = 0.0;
  for (std::size_t i = 1; i < n_; ++i) tail += x[i];
  const double gx = 1.0 + 9.0 * tail / static_cast<double>(n_ - 1);
  const double kk = static_cast<double>(k_);
  const double r = 5.0 + 10.0 * (x[0] - 0.5) * (x[0] - 0.5) + std::cos(2.0 * kk * std::numbers::pi * x[0]) / kk;
  const double angle = std::numbers::pi * x[0] / 2.0;
  Fitness f;
  f.objectives = {gx * r * std::sin(angle), gx * r * std::cos(angle)};
  return f;
}

std::pair<Genome, Genome> KneeBenchmark::crossover(const Genome& p1, const Genome& p2, Rng& rng) const {
  if (p1.reals.size() != n_ || p2.reals.size() != n_) {
    throw std::invalid_argument("knee benchmark crossover: schema mismatch");
  }
  std::bernoulli_distribution coin(0.5);
  Genome c1 = p1;
  Genome c2 = p2;
  for (std::size_t i = 0; i < n_; ++i) {
    if (coin(rng)) std::swap(c1.reals[i], c2.reals[i]);
  }
  return {std::move(c1), std::move(c2)};
}

Genome KneeBenchmark::mutate(const Genome& g, double prob, Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Genome out = g;
  for (auto& x : out.reals) {
    if (u(rng) < prob) x = u(rng);
  }
  return out;
}

}  // namespace kneeopt

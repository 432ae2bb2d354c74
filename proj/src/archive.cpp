#include "kneeopt/archive.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kneeopt {

void SelectionConfig::validate() const {
  if (lambda == 0) throw std::invalid_argument("population size must be positive");
  if (mu == 0 || mu >= lambda) throw std::invalid_argument("elite count must satisfy 0 < mu < lambda");
  if (tournament_size == 0) throw std::invalid_argument("tournament size must be positive");
}

bool crowded_less(const Individual& a, const Individual& b) {
  const auto ra = a.fitness && a.fitness->rank ? *a.fitness->rank : std::numeric_limits<std::uint32_t>::max();
  const auto rb = b.fitness && b.fitness->rank ? *b.fitness->rank : std::numeric_limits<std::uint32_t>::max();
  if (ra != rb) return ra < rb;
  const double sa = a.fitness ? a.fitness->sparsity : 0.0;
  const double sb = b.fitness ? b.fitness->sparsity : 0.0;
  return sa > sb;
}

void assign_sparsity(Population& s, std::span<const std::size_t> members, const Bounds& bounds) {
  if (members.empty()) return;
  const std::size_t m = bounds.dimension();
  const std::size_t n = members.size();

  std::vector<ObjectiveVector> norm(n);
  for (std::size_t k = 0; k < n; ++k) {
    norm[k] = normalize(s[members[k]].objectives(), bounds);
    s[members[k]].fitness->sparsity = 0.0;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return norm[a][obj] < norm[b][obj]; });
    s[members[order.front()]].fitness->sparsity = kInfinity;
    s[members[order.back()]].fitness->sparsity = kInfinity;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      auto& sp = s[members[order[k]]].fitness->sparsity;
      sp += norm[order[k + 1]][obj] - norm[order[k - 1]][obj];
    }
  }
}

Population assign_sparsity(Population front, const Bounds& bounds) {
  std::vector<std::size_t> all(front.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  assign_sparsity(front, all, bounds);
  return front;
}

Population build_archive(Population s, const SelectionConfig& cfg, const ConeParams& c, const Bounds& bounds) {
  const auto ranked = assign_front_ranks(s, c, bounds);
  if (s.size() < cfg.lambda) {
    for (const auto& front : ranked.fronts) assign_sparsity(s, front, bounds);
    return s;
  }

  Population out;
  out.reserve(cfg.lambda);
  for (const auto& front : ranked.fronts) {
    assign_sparsity(s, front, bounds);
    if (front.size() + out.size() >= cfg.lambda) {
      std::vector<std::size_t> sorted(front.begin(), front.end());
      std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return s[a].fitness->sparsity > s[b].fitness->sparsity;
      });
      const std::size_t take = cfg.lambda - out.size();
      for (std::size_t k = 0; k < take; ++k) out.push_back(std::move(s[sorted[k]]));
      break;
    }
    for (std::size_t i : front) out.push_back(std::move(s[i]));
  }
  return out;
}

Population select_elites(const Population& s, std::size_t mu) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return crowded_less(s[a], s[b]); });
  const std::size_t take = std::min(mu, s.size());
  Population out;
  out.reserve(take);
  for (std::size_t k = 0; k < take; ++k) out.push_back(s[order[k]]);
  return out;
}

std::size_t tournament_select_index(const Population& s, std::size_t k, Rng& rng) {
  if (s.empty()) throw std::invalid_argument("tournament_select: empty population");
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  std::size_t best = pick(rng);
  for (std::size_t draw = 1; draw < k; ++draw) {
    const std::size_t challenger = pick(rng);
    if (crowded_less(s[challenger], s[best])) best = challenger;
  }
  return best;
}

const Individual& tournament_select(const Population& s, std::size_t k, Rng& rng) {
  return s[tournament_select_index(s, k, rng)];
}

}  // namespace kneeopt

#pragma once

#include <vector>

#include "kneeopt/core.hpp"

namespace testing_support {

inline kneeopt::Individual individual(std::vector<double> f, std::uint32_t satisfied = 0, std::uint32_t total = 0) {
  kneeopt::Fitness fit;
  fit.objectives = std::move(f);
  fit.constraints_satisfied = satisfied;
  fit.constraints_total = total;
  return kneeopt::Individual{{}, fit};
}

inline kneeopt::Population population(const std::vector<std::vector<double>>& pts) {
  kneeopt::Population s;
  for (const auto& p : pts) s.push_back(individual(p));
  return s;
}

/// Bounds spanning exactly the given points.
inline kneeopt::Bounds tight_bounds(const std::vector<std::vector<double>>& pts) {
  kneeopt::Bounds b;
  b.min_p = pts.front();
  b.max_p = pts.front();
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      b.min_p[k] = std::min(b.min_p[k], p[k]);
      b.max_p[k] = std::max(b.max_p[k], p[k]);
    }
  }
  return b;
}

inline kneeopt::Bounds unit_bounds(std::size_t m) {
  return kneeopt::Bounds{std::vector<double>(m, 1.0), std::vector<double>(m, 0.0)};
}

}  // namespace testing_support

#include "kneeopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kneeopt {

Bounds bounds_init(std::size_t m, std::span<const double> upper) {
  if (upper.size() != m) {
    throw std::invalid_argument("bounds_init: upper bound vector has " + std::to_string(upper.size()) +
                                " entries, expected " + std::to_string(m));
  }
  if (m == 0) {
    throw std::invalid_argument("bounds_init: dimension must be positive");
  }
  for (double u : upper) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw std::invalid_argument("bounds_init: upper bounds must be finite and positive");
    }
  }
  return Bounds{ObjectiveVector(m, 0.0), ObjectiveVector(upper.begin(), upper.end())};
}

void bounds_update_inplace(Bounds& b, std::span<const double> f) {
  if (f.size() != b.dimension()) {
    throw std::invalid_argument("bounds_update: objective vector has " + std::to_string(f.size()) +
                                " entries, expected " + std::to_string(b.dimension()));
  }
  for (double v : f) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("bounds_update: non-finite objective value");
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    b.max_p[i] = std::max(b.max_p[i], f[i]);
    b.min_p[i] = std::min(b.min_p[i], f[i]);
  }
}

Bounds bounds_update(Bounds b, std::span<const double> f) {
  bounds_update_inplace(b, f);
  return b;
}

ObjectiveVector normalize(std::span<const double> f, const Bounds& b) {
  ObjectiveVector out(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double span = b.max_p[i] - b.min_p[i];
    out[i] = span != 0.0 ? (f[i] - b.min_p[i]) / span : 0.0;
  }
  return out;
}

std::weak_ordering feasibility_compare(const Fitness& a, const Fitness& b) {
  if (a.constraints_total != b.constraints_total) {
    throw std::invalid_argument("feasibility_compare: mismatched constraint totals");
  }
  if (a.feasible() && b.feasible()) {
    return std::weak_ordering::equivalent;
  }
  // More satisfied constraints wins; feasibility is the maximal count.
  if (a.constraints_satisfied > b.constraints_satisfied) return std::weak_ordering::less;
  if (a.constraints_satisfied < b.constraints_satisfied) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

}  // namespace kneeopt

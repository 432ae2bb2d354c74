#include "kneeopt/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kneeopt {

double cone_coefficient(double theta_degrees) {
  if (!(theta_degrees >= 90.0 && theta_degrees <= 180.0)) {
    throw std::invalid_argument("cone angle " + std::to_string(theta_degrees) + " outside [90, 180]");
  }
  if (theta_degrees == 90.0) return 0.0;
  if (theta_degrees == 180.0) return 1.0;
  const double half = (theta_degrees - 90.0) / 2.0;
  return std::tan(half * std::numbers::pi / 180.0);
}

ConeParams ConeParams::from_degrees(double theta) { return ConeParams{theta, cone_coefficient(theta)}; }

double cone_value(std::span<const double> x_norm, std::size_t axis, const ConeParams& c) {
  if (axis >= x_norm.size()) {
    throw std::out_of_range("cone_value: axis out of range");
  }
  double sum = 0.0;
  for (double v : x_norm) sum += v;
  return (1.0 - c.coeff) * x_norm[axis] + c.coeff * sum;
}

bool pareto_dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pareto_dominates: length mismatch");
  }
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

namespace {

kernels::RowMatrix cone_rows_of(std::span<const Individual* const> members, const ConeParams& c,
                                const Bounds& bounds) {
  const std::size_t m = bounds.dimension();
  kernels::RowMatrix objs(members.size(), m);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& f = members[i]->objectives();
    if (f.size() != m) throw std::invalid_argument("objective vector dimension mismatch");
    std::copy(f.begin(), f.end(), objs.row(i).begin());
  }
  return kernels::cone_transform(objs, bounds, c.coeff);
}

}  // namespace

bool cone_dominates(const Individual& a, const Individual& b, const ConeParams& c, const Bounds& bounds) {
  const Individual* pair[] = {&a, &b};
  const auto rows = cone_rows_of(pair, c, bounds);
  return pareto_dominates(rows.row(0), rows.row(1));
}

bool constrained_dominates(const Individual& a, const Individual& b, const ConeParams& c, const Bounds& bounds) {
  const auto order = feasibility_compare(*a.fitness, *b.fitness);
  if (order != std::weak_ordering::equivalent) return order == std::weak_ordering::less;
  return cone_dominates(a, b, c, bounds);
}

kernels::DominanceInput make_dominance_input(const Population& s, const ConeParams& c, const Bounds& bounds) {
  std::vector<const Individual*> members;
  members.reserve(s.size());
  kernels::DominanceInput in;
  in.satisfied.reserve(s.size());
  for (const auto& ind : s) {
    if (!ind.evaluated()) throw std::invalid_argument("dominance: unevaluated individual");
    members.push_back(&ind);
    in.satisfied.push_back(ind.fitness->constraints_satisfied);
  }
  if (!s.empty()) in.constraints_total = s.front().fitness->constraints_total;
  for (const auto& ind : s) {
    if (ind.fitness->constraints_total != in.constraints_total) {
      throw std::invalid_argument("dominance: mismatched constraint totals");
    }
  }
  in.cone_rows = cone_rows_of(members, c, bounds);
  return in;
}

std::vector<std::size_t> knee_front_indices(const Population& s, const ConeParams& c, const Bounds& bounds) {
  if (s.empty()) return {};
  const auto in = make_dominance_input(s, c, bounds);
  const auto matrix = kernels::dominance_matrix(in);
  const auto counts = kernels::dominated_counts(matrix, s.size());
  std::vector<std::size_t> front;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (counts[j] == 0) front.push_back(j);
  }
  return front;
}

Population knee_front(const Population& s, const ConeParams& c, const Bounds& bounds) {
  Population out;
  for (std::size_t i : knee_front_indices(s, c, bounds)) out.push_back(s[i]);
  return out;
}

RankedFronts assign_front_ranks(Population& s, const ConeParams& c, const Bounds& bounds) {
  RankedFronts ranked;
  const std::size_t n = s.size();
  if (n == 0) return ranked;

  const auto in = make_dominance_input(s, c, bounds);
  const auto matrix = kernels::dominance_matrix(in);
  // Peeling a front removes its members from every remaining dominator
  // count; the next front is whatever reaches zero.
  auto remaining = kernels::dominated_counts(matrix, n);

  std::vector<std::size_t> current;
  for (std::size_t j = 0; j < n; ++j) {
    if (remaining[j] == 0) current.push_back(j);
  }
  std::uint32_t rank = 1;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      s[i].fitness->rank = rank;
      const std::uint8_t* row = matrix.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] && --remaining[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    ranked.fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return ranked;
}

}  // namespace kneeopt

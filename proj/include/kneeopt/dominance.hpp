#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kneeopt/core.hpp"
#include "kneeopt/kernels.hpp"

namespace kneeopt {

/// Symmetric cone: every face of the dominated hypercone opens at `theta`
/// degrees, theta in [90, 180]. 90 is Pareto dominance, 180 an equal-weight
/// sum of the normalized objectives.
struct ConeParams {
  double theta = 90.0;
  double coeff = 0.0;

  static ConeParams from_degrees(double theta);
};

/// Off-diagonal entry a_ij = tan((theta - 90) / 2) of the cone matrix.
/// Exact at the endpoints (0 at 90 degrees, 1 at 180). Throws outside
/// [90, 180].
double cone_coefficient(double theta_degrees);

/// Omega_axis(x) = x[axis] + coeff * sum_{j != axis} x[j]; `axis` is
/// zero-based. The diagonal weight is exactly 1.
///
/// An asymmetric cone would use a distinct a_ij per ordered pair, with the
/// face angle between objectives i and j equal to 90 + atan(a_ij) + atan(a_ji);
/// equalizing all faces to theta gives a_ij = tan((theta - 90) / 2). Only the
/// symmetric case is exposed.
double cone_value(std::span<const double> x_norm, std::size_t axis, const ConeParams& c);

bool pareto_dominates(std::span<const double> a, std::span<const double> b);

/// Cone-domination of two evaluated individuals after normalizing both with
/// `bounds`. Objectives only; constraint counts are not consulted.
bool cone_dominates(const Individual& a, const Individual& b, const ConeParams& c, const Bounds& bounds);

/// Cone-domination with the feasibility precedence of `feasibility_compare`
/// layered in front. This is the relation ranking uses.
bool constrained_dominates(const Individual& a, const Individual& b, const ConeParams& c, const Bounds& bounds);

/// Packs a population into the kernel input for `constrained_dominates`.
kernels::DominanceInput make_dominance_input(const Population& s, const ConeParams& c, const Bounds& bounds);

/// Indices (ascending) of members not dominated by any other member.
std::vector<std::size_t> knee_front_indices(const Population& s, const ConeParams& c, const Bounds& bounds);

/// Members of `s` not cone-dominated by another member, in input order.
/// Duplicated objective vectors do not dominate each other and all stay.
Population knee_front(const Population& s, const ConeParams& c, const Bounds& bounds);

/// Successive non-domination levels; fronts[0] holds rank 1.
struct RankedFronts {
  std::vector<std::vector<std::size_t>> fronts;
};

/// Peels knee fronts off `s` until it is exhausted and writes rank r into
/// each member of the r-th peel.
RankedFronts assign_front_ranks(Population& s, const ConeParams& c, const Bounds& bounds);

}  // namespace kneeopt

#pragma once

#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>

namespace kneeopt {

inline constexpr double kGoldenRatio = std::numbers::phi;  // (sqrt(5) + 1) / 2

/// Golden-section search over the cone angle, advanced one probe per
/// generation. The probes are recomputed from the bracket after every
/// completed pair, as the generation loop expects.
struct GoldenSectionState {
  double theta = 90.0;
  double theta_a = 90.0;
  double theta_b = 180.0;
  double theta_c = 90.0;
  double theta_d = 180.0;
  std::optional<double> hdist_c;
  std::optional<double> hdist_d;
  bool testing_c = false;
  bool active = false;
  bool frozen = false;
  std::size_t completed_pairs = 0;

  double min_hyp = std::numeric_limits<double>::infinity();
  double max_hyp = -std::numeric_limits<double>::infinity();
  double min_pof = std::numeric_limits<double>::infinity();
  double max_pof = -std::numeric_limits<double>::infinity();

  double width() const { return theta_b - theta_a; }
};

/// Folds one generation's knee-front hypervolume and size into the running
/// extremes. Must precede `online_hdist` for the same observation.
void observe_front(GoldenSectionState& st, double hyp, std::size_t front_size);

/// Normalized hypervolume times normalized front-size complement, each factor
/// clamped to [0, 1]. A factor whose extremes coincide counts as 1.
double online_hdist(double hyp, std::size_t front_size, const GoldenSectionState& st);

/// Starts the search while the angle is still at 90 degrees if the front has
/// more than `mu` members or the hypervolume gained less than 1e-5.
GoldenSectionState golden_trigger(std::size_t front_size, double hv_now, double hv_prev, std::size_t mu,
                                  GoldenSectionState st);

/// Records the score of the angle just tested and moves to the next probe.
/// Throws std::logic_error if the search is not active.
GoldenSectionState golden_step(double score, GoldenSectionState st);

bool golden_converged(const GoldenSectionState& st, double tol);

/// Pins theta to the bracket midpoint and stops further steps.
GoldenSectionState golden_freeze(GoldenSectionState st);

}  // namespace kneeopt

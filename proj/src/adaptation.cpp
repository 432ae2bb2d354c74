#include "kneeopt/adaptation.hpp"

#include <algorithm>
#include <stdexcept>

namespace kneeopt {

namespace {

constexpr double kMinHvGain = 1e-5;

void place_probes(GoldenSectionState& st) {
  const double w = st.theta_b - st.theta_a;
  st.theta_c = st.theta_b - w / kGoldenRatio;
  st.theta_d = st.theta_a + w / kGoldenRatio;
  st.theta = st.theta_c;
  st.testing_c = true;
}

double unit_factor(double numer, double denom) {
  if (denom == 0.0) return 1.0;
  return std::clamp(numer / denom, 0.0, 1.0);
}

}  // namespace

void observe_front(GoldenSectionState& st, double hyp, std::size_t front_size) {
  const auto pof = static_cast<double>(front_size);
  st.min_hyp = std::min(st.min_hyp, hyp);
  st.max_hyp = std::max(st.max_hyp, hyp);
  st.min_pof = std::min(st.min_pof, pof);
  st.max_pof = std::max(st.max_pof, pof);
}

double online_hdist(double hyp, std::size_t front_size, const GoldenSectionState& st) {
  const auto pof = static_cast<double>(front_size);
  return unit_factor(hyp - st.min_hyp, st.max_hyp - st.min_hyp) *
         unit_factor(st.max_pof - pof, st.max_pof - st.min_pof);
}

GoldenSectionState golden_trigger(std::size_t front_size, double hv_now, double hv_prev, std::size_t mu,
                                  GoldenSectionState st) {
  if (st.active) return st;
  if (front_size > mu || hv_now - hv_prev < kMinHvGain) {
    st.active = true;
    place_probes(st);
  }
  return st;
}

GoldenSectionState golden_step(double score, GoldenSectionState st) {
  if (!st.active || st.frozen) {
    throw std::logic_error("golden_step called on an inactive search");
  }
  if (st.testing_c) {
    st.hdist_c = score;
    st.theta = st.theta_d;
    st.testing_c = false;
    return st;
  }
  st.hdist_d = score;
  if (*st.hdist_c > *st.hdist_d) {
    st.theta_b = st.theta_d;
  } else {
    st.theta_a = st.theta_c;
  }
  ++st.completed_pairs;
  place_probes(st);
  return st;
}

bool golden_converged(const GoldenSectionState& st, double tol) { return st.active && st.width() < tol; }

GoldenSectionState golden_freeze(GoldenSectionState st) {
  st.theta = 0.5 * (st.theta_a + st.theta_b);
  st.frozen = true;
  return st;
}

}  // namespace kneeopt

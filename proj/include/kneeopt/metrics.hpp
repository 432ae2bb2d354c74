#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kneeopt/core.hpp"

namespace kneeopt {

/// Exact hypervolume (Lebesgue measure of the union of boxes [p, ref]) for
/// any number of objectives. Duplicates and dominated points are filtered
/// first. Points not strictly below `ref` on every axis enclose nothing and
/// are skipped; their count is reported through `dropped` when given.
double hypervolume(std::span<const ObjectiveVector> front, std::span<const double> ref,
                   std::size_t* dropped = nullptr);

/// Members of `points` not Pareto-dominated by another member, duplicates
/// collapsed to their first occurrence. Input order is kept.
std::vector<ObjectiveVector> nondominated_unique(std::span<const ObjectiveVector> points);

/// Offline hypervolume-distribution score of `s` against the reference
/// front `p`: (#p - #s) / #p * HV(s) / HV(p). The count factor is clamped
/// at zero for sets larger than the reference. Throws if HV(p) == 0.
double hdist_offline(std::span<const ObjectiveVector> s, std::span<const ObjectiveVector> p,
                     std::span<const double> ref);

struct SampleSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation, 0 when n == 1
  std::size_t n = 0;
};

SampleSummary summarize_sample(std::span<const double> values);

/// Final-generation quantities of one run, after reference-front scoring.
struct RunMetrics {
  std::string config_id;
  double hypervolume = 0.0;
  double front_size = 0.0;
  double hdist = 0.0;
  double generations = 0.0;
};

struct SummaryRow {
  std::string config_id;
  std::string metric;
  SampleSummary stats;
};

/// Mean and sample standard deviation per configuration of hypervolume,
/// front size, HDist and generations to converge. Configurations appear in
/// first-seen order, metrics in that fixed order.
std::vector<SummaryRow> front_stats(std::span<const RunMetrics> records);

/// Two-sided Wilcoxon rank-sum (Mann-Whitney U) p-value with midranks for
/// ties. Exact enumeration when both samples have at most 12 values, normal
/// approximation with tie and continuity corrections otherwise. Symmetric in
/// its arguments. Throws on an empty sample.
double rank_sum_test(std::span<const double> a, std::span<const double> b);

}  // namespace kneeopt

#include "kneeopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kneeopt {

namespace {

using Point = std::vector<double>;

bool weakly_dominates(const Point& a, const Point& b, std::size_t d) {
  for (std::size_t k = 0; k < d; ++k) {
    if (a[k] > b[k]) return false;
  }
  return true;
}

// Keeps the points not weakly dominated by an earlier kept point and evicts
// kept points that a newcomer weakly dominates. Duplicates collapse.
std::vector<Point> filter_nondominated(std::vector<Point> pts, std::size_t d) {
  std::vector<Point> kept;
  kept.reserve(pts.size());
  for (auto& p : pts) {
    bool dominated = false;
    for (const auto& q : kept) {
      if (weakly_dominates(q, p, d)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(kept, [&](const Point& q) { return weakly_dominates(p, q, d); });
    kept.push_back(std::move(p));
  }
  return kept;
}

double box_volume(const Point& p, std::span<const double> ref, std::size_t d) {
  double v = 1.0;
  for (std::size_t k = 0; k < d; ++k) v *= ref[k] - p[k];
  return v;
}

double hv2(std::vector<Point> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
  double vol = 0.0;
  double y_bound = ref[1];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i][1] >= y_bound) continue;
    vol += (ref[0] - pts[i][0]) * (y_bound - pts[i][1]);
    y_bound = pts[i][1];
  }
  return vol;
}

// Points are mutually non-dominated in the first d coordinates and strictly
// inside the reference box.
double hv_recursive(std::vector<Point> pts, std::span<const double> ref, std::size_t d) {
  if (pts.empty()) return 0.0;
  if (d == 1) {
    double best = ref[0];
    for (const auto& p : pts) best = std::min(best, p[0]);
    return ref[0] - best;
  }
  if (d == 2) return hv2(std::move(pts), ref);

  // Sweep along the last axis. Between consecutive heights the slab's cross
  // section is the (d-1)-dimensional hypervolume of the points already
  // passed, grown incrementally by each point's exclusive contribution.
  const std::size_t last = d - 1;
  std::sort(pts.begin(), pts.end(), [last](const Point& a, const Point& b) { return a[last] < b[last]; });

  std::vector<Point> passed;
  double section = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point& p = pts[k];
    bool covered = false;
    for (const auto& q : passed) {
      if (weakly_dominates(q, p, last)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      std::vector<Point> limited;
      limited.reserve(passed.size());
      for (const auto& q : passed) {
        Point l(last);
        for (std::size_t a = 0; a < last; ++a) l[a] = std::max(q[a], p[a]);
        limited.push_back(std::move(l));
      }
      const double overlap = hv_recursive(filter_nondominated(std::move(limited), last), ref, last);
      section += box_volume(p, ref, last) - overlap;
      std::erase_if(passed, [&](const Point& q) { return weakly_dominates(p, q, last); });
      passed.push_back(p);
    }
    const double next_z = k + 1 < pts.size() ? pts[k + 1][last] : ref[last];
    total += section * (next_z - p[last]);
  }
  return total;
}

}  // namespace

std::vector<ObjectiveVector> nondominated_unique(std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j) {
      if (i == j) continue;
      bool le = true;
      bool lt = false;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        if (points[j][k] > points[i][k]) {
          le = false;
          break;
        }
        if (points[j][k] < points[i][k]) lt = true;
      }
      if (le && lt) drop = true;
      if (le && !lt && j < i) drop = true;  // duplicate of an earlier point
    }
    if (!drop) out.push_back(points[i]);
  }
  return out;
}

double hypervolume(std::span<const ObjectiveVector> front, std::span<const double> ref, std::size_t* dropped) {
  const std::size_t d = ref.size();
  std::size_t skipped = 0;
  std::vector<Point> inside;
  inside.reserve(front.size());
  for (const auto& p : front) {
    if (p.size() != d) throw std::invalid_argument("hypervolume: point dimension mismatch");
    bool ok = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (!(p[k] < ref[k])) ok = false;
    }
    if (ok) {
      inside.push_back(p);
    } else {
      ++skipped;
    }
  }
  if (dropped) *dropped = skipped;
  if (inside.empty() || d == 0) return 0.0;
  return hv_recursive(filter_nondominated(std::move(inside), d), ref, d);
}

double hdist_offline(std::span<const ObjectiveVector> s, std::span<const ObjectiveVector> p,
                     std::span<const double> ref) {
  const double hv_p = hypervolume(p, ref);
  if (!(hv_p > 0.0)) throw std::invalid_argument("hdist_offline: reference front has zero hypervolume");
  const auto np = static_cast<double>(p.size());
  const auto ns = static_cast<double>(s.size());
  const double count_factor = std::max(0.0, (np - ns) / np);
  return count_factor * hypervolume(s, ref) / hv_p;
}

SampleSummary summarize_sample(std::span<const double> values) {
  SampleSummary out;
  out.n = values.size();
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(out.n);
  if (out.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(out.n - 1));
  }
  return out;
}

std::vector<SummaryRow> front_stats(std::span<const RunMetrics> records) {
  std::vector<std::string> ids;
  for (const auto& r : records) {
    if (std::find(ids.begin(), ids.end(), r.config_id) == ids.end()) ids.push_back(r.config_id);
  }
  struct Column {
    const char* name;
    double RunMetrics::*field;
  };
  static constexpr Column kColumns[] = {
      {"hypervolume", &RunMetrics::hypervolume},
      {"front_size", &RunMetrics::front_size},
      {"hdist", &RunMetrics::hdist},
      {"generations", &RunMetrics::generations},
  };
  std::vector<SummaryRow> rows;
  for (const auto& id : ids) {
    for (const auto& col : kColumns) {
      std::vector<double> values;
      for (const auto& r : records) {
        if (r.config_id == id) values.push_back(r.*(col.field));
      }
      rows.push_back(SummaryRow{id, col.name, summarize_sample(values)});
    }
  }
  return rows;
}

namespace {

struct Ranked {
  std::vector<long long> doubled_ranks;  // 2 * midrank, always integral
  std::vector<std::size_t> tie_sizes;
};

Ranked midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  Ranked out;
  out.doubled_ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j (0-based) share midrank ((i+1) + (j+1)) / 2.
    const auto doubled = static_cast<long long>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[order[k]] = doubled;
    out.tie_sizes.push_back(j - i + 1);
    i = j + 1;
  }
  return out;
}

constexpr std::size_t kExactLimit = 12;

}  // namespace

double rank_sum_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("rank_sum_test: empty sample");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranked = midranks(pooled);

  long long w2 = 0;
  for (std::size_t i = 0; i < n1; ++i) w2 += ranked.doubled_ranks[i];
  const auto mean2 = static_cast<long long>(n1 * (n + 1));  // 2 * E[W]
  const long long observed_dev = std::llabs(w2 - mean2);

  if (n1 <= kExactLimit && n2 <= kExactLimit) {
    // counts[k][s]: number of k-subsets of the pooled ranks with doubled sum s.
    const long long max_sum = std::accumulate(ranked.doubled_ranks.begin(), ranked.doubled_ranks.end(), 0LL);
    std::vector<std::vector<double>> counts(n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    counts[0][0] = 1.0;
    for (long long r : ranked.doubled_ranks) {
      for (std::size_t k = n1; k >= 1; --k) {
        for (long long s = max_sum; s >= r; --s) {
          counts[k][static_cast<std::size_t>(s)] += counts[k - 1][static_cast<std::size_t>(s - r)];
        }
      }
    }
    double extreme = 0.0;
    double all = 0.0;
    for (long long s = 0; s <= max_sum; ++s) {
      const double c = counts[n1][static_cast<std::size_t>(s)];
      all += c;
      if (std::llabs(s - mean2) >= observed_dev) extreme += c;
    }
    return std::min(1.0, extreme / all);
  }

  const double u_dev = static_cast<double>(observed_dev) / 2.0;  // |U - n1 n2 / 2|
  double tie_term = 0.0;
  for (std::size_t t : ranked.tie_sizes) {
    const auto td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const auto dn = static_cast<double>(n);
  const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                     ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, u_dev - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace kneeopt

// Acceptance run: one PASS/FAIL line per criterion, indented details below.
//
//   kneeopt_acceptance [OUTPUT_DIR]
//
// Criteria 6-10 run full experiments (30 repetitions, lambda 200) and write
// their artifacts under OUTPUT_DIR (default ./acceptance_runs).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kneeopt/adaptation.hpp"
#include "kneeopt/dominance.hpp"
#include "kneeopt/experiment.hpp"
#include "kneeopt/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kneeopt;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
  if (!pass) ++failures;
}

void detail(const std::string& line) { std::cout << "    " << line << std::endl; }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// Random objective points; every third population is drawn from a coarse
// grid so that ties and duplicates occur.
std::vector<oracle::Vec> random_population(std::size_t n, std::size_t m, std::mt19937_64& rng, int kind) {
  auto pts = oracle::random_points(n, m, rng);
  if (kind % 3 == 0) {
    for (auto& p : pts) {
      for (auto& v : p) v = std::floor(v * 4.0) / 4.0;
    }
  }
  return pts;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  const std::size_t dims[] = {2, 3, 7};
  const ConeParams pareto = ConeParams::from_degrees(90.0);
  std::size_t front_bad = 0, rank_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_population(size(rng), dims[t % 3], rng, t);
    auto s = testing_support::population(pts);
    const auto b = testing_support::tight_bounds(pts);
    if (knee_front_indices(s, pareto, b) != oracle::front(pts, oracle::pareto)) ++front_bad;
    assign_front_ranks(s, pareto, b);
    const auto expect = oracle::peel_ranks(pts, oracle::pareto);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].fitness->rank != expect[i]) {
        ++rank_bad;
        break;
      }
    }
  }
  const double secs = seconds_since(start);
  report(1, front_bad == 0 && rank_bad == 0 && secs < 10.0,
         "theta=90 front and ranks equal the brute-force oracles on 200 populations");
  detail("front mismatches " + std::to_string(front_bad) + ", rank mismatches " + std::to_string(rank_bad) +
         ", " + fmt(secs, 3) + " s");
}

void criterion_2() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> size(2, 50);
  std::uniform_int_distribution<std::size_t> dim(2, 7);
  std::uniform_real_distribution<double> angle(90.0, 180.0);
  std::size_t violations = 0;
  for (int t = 0; t < 100; ++t) {
    const auto pts = random_population(size(rng), dim(rng), rng, t);
    const auto s = testing_support::population(pts);
    const auto b = testing_support::tight_bounds(pts);
    double t1 = angle(rng), t2 = angle(rng);
    if (t1 > t2) std::swap(t1, t2);
    if (t % 10 == 0) t1 = 90.0;
    if (t % 10 == 1) t2 = 180.0;
    if (t1 == t2) t2 = std::min(180.0, t1 + 1.0);
    const auto wide = knee_front_indices(s, ConeParams::from_degrees(t1), b);
    const auto narrow = knee_front_indices(s, ConeParams::from_degrees(t2), b);
    if (!std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end())) ++violations;
  }
  report(2, violations == 0, "knee_front(theta2) is a subset of knee_front(theta1) on 100 populations");
  detail("violations " + std::to_string(violations));
}

void criterion_3() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_int_distribution<std::size_t> dim(2, 7);
  const ConeParams flat = ConeParams::from_degrees(180.0);
  std::size_t bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_population(size(rng), dim(rng), rng, t);
    const auto s = testing_support::population(pts);
    const auto b = testing_support::tight_bounds(pts);
    std::vector<double> sums;
    for (const auto& p : pts) {
      const auto x = oracle::normalize(p, b.min_p, b.max_p);
      double total = 0.0;
      for (double v : x) total += v;
      sums.push_back(total);
    }
    const double best = *std::min_element(sums.begin(), sums.end());
    std::vector<std::size_t> minimizers;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      if (sums[i] == best) minimizers.push_back(i);
    }
    if (knee_front_indices(s, flat, b) != minimizers) ++bad;
  }
  report(3, bad == 0, "theta=180 front is exactly the set of normalized-sum minimizers on 200 populations");
  detail("mismatches " + std::to_string(bad));
}

void criterion_4() {
  const auto start = Clock::now();
  // Every front of at most four points from a 5 x 5 grid inside the unit box.
  std::vector<oracle::Vec> grid;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) grid.push_back({i * 0.25, j * 0.25});
  }
  const oracle::Vec ref{1.0, 1.0};
  std::size_t exact_cases = 0, exact_bad = 0;
  const std::size_t g = grid.size();
  auto check = [&](std::vector<oracle::Vec> pts) {
    ++exact_cases;
    if (hypervolume(pts, ref) != oracle::hv_inclusion_exclusion(pts, ref)) ++exact_bad;
  };
  for (std::size_t a = 0; a < g; ++a) {
    check({grid[a]});
    for (std::size_t b = a + 1; b < g; ++b) {
      check({grid[a], grid[b]});
      for (std::size_t c = b + 1; c < g; ++c) {
        check({grid[a], grid[b], grid[c]});
        for (std::size_t d = c + 1; d < g; ++d) check({grid[a], grid[b], grid[c], grid[d]});
      }
    }
  }

  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> dim(2, 7);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::size_t mc_bad = 0;
  double worst_z = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = dim(rng);
    const auto pts = oracle::random_points(size(rng), m, rng);
    const oracle::Vec lo(m, 0.0), r(m, 1.0);
    const auto est = oracle::hv_monte_carlo(pts, lo, r, 1'000'000, 1000 + static_cast<std::uint64_t>(t));
    const double exact = hypervolume(pts, r);
    const double z = est.sigma > 0.0 ? std::abs(exact - est.value) / est.sigma : (exact == est.value ? 0.0 : 1e9);
    worst_z = std::max(worst_z, z);
    if (z > 3.0) ++mc_bad;
  }
  const double two = hypervolume(std::vector<ObjectiveVector>{{0.25, 0.75}, {0.75, 0.25}}, ref);
  report(4, exact_bad == 0 && mc_bad == 0 && two == 0.3125,
         "hypervolume matches inclusion-exclusion exactly and Monte-Carlo within 3 sigma");
  detail("grid fronts " + std::to_string(exact_cases) + ", mismatches " + std::to_string(exact_bad));
  detail("Monte-Carlo fronts 50, outside 3 sigma " + std::to_string(mc_bad) + ", worst z " + fmt(worst_z, 3));
  detail("two-point example " + format_double(two) + ", " + fmt(seconds_since(start), 3) + " s");
}

void criterion_5() {
  const auto triggered = golden_trigger(100, 0.5, 0.4, 20, GoldenSectionState{});
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto st = triggered;
  double worst_rel = 0.0;
  for (int k = 1; k <= 12; ++k) {
    st = golden_step(u(rng), st);
    st = golden_step(u(rng), st);
    const double expect = 90.0 / std::pow(kGoldenRatio, k);
    worst_rel = std::max(worst_rel, std::abs(st.width() - expect) / expect);
  }

  // Piecewise-linear score peaking at 137 degrees with random slopes.
  double worst_err = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 r(seed);
    std::uniform_real_distribution<double> slope(0.01, 2.0);
    const double left = slope(r), right = slope(r);
    auto score = [&](double t) { return t < 137.0 ? 1.0 - left * (137.0 - t) / 90.0 : 1.0 - right * (t - 137.0) / 90.0; };
    auto s = triggered;
    while (!golden_converged(s, 1.0)) s = golden_step(score(s.theta), s);
    s = golden_freeze(s);
    worst_err = std::max(worst_err, std::abs(s.theta - 137.0));
  }
  report(5, worst_rel <= 1e-9 && worst_err < 1.0,
         "bracket width is 90/phi^k and the frozen angle lands within 1 degree of 137");
  detail("worst relative width error " + fmt(worst_rel, 3) + ", worst angle error " + fmt(worst_err, 3) + " deg");
}

// ---------------------------------------------------------------------------

struct ProblemRun {
  std::string label;
  ExperimentTables tables;
  std::map<std::string, RunMetrics> means;  // per config id

  double p_value(const std::string& metric, const std::string& a, const std::string& b) const {
    for (const auto& p : tables.p_values) {
      if (p.metric == metric && ((p.config_a == a && p.config_b == b) || (p.config_a == b && p.config_b == a))) {
        return p.p_value;
      }
    }
    return 1.0;
  }
};

const std::vector<std::string> kCones = {"fixed_120", "fixed_135", "fixed_150", "self_adaptive"};

ExperimentConfig study_config(const ProblemSelector& sel, const fs::path& out) {
  ExperimentConfig c;
  c.problem = sel;
  c.variants = {{Variant::kPareto, 90.0},
                {Variant::kFixedAngle, 120.0},
                {Variant::kFixedAngle, 135.0},
                {Variant::kFixedAngle, 150.0},
                {Variant::kSelfAdaptive, 90.0}};
  c.repetitions = 30;
  c.lambda = 200;
  c.mu = 20;
  c.stop_gen = 10;
  c.max_gen = 300;
  c.output_dir = out;
  return c;
}

ProblemRun run_study(const ProblemSelector& sel, const fs::path& out) {
  const auto start = Clock::now();
  fs::remove_all(out);
  ProblemRun pr;
  pr.label = sel.label();
  pr.tables = run_experiment(study_config(sel, out));
  std::map<std::string, std::size_t> counts;
  for (const auto& m : pr.tables.metrics) {
    auto& acc = pr.means[m.config_id];
    acc.config_id = m.config_id;
    acc.hypervolume += m.hypervolume;
    acc.front_size += m.front_size;
    acc.hdist += m.hdist;
    acc.generations += m.generations;
    ++counts[m.config_id];
  }
  for (auto& [id, acc] : pr.means) {
    const auto n = static_cast<double>(counts[id]);
    acc.hypervolume /= n;
    acc.front_size /= n;
    acc.hdist /= n;
    acc.generations /= n;
  }
  std::cout << "  ran " << pr.label << " in " << fmt(seconds_since(start), 3) << " s" << std::endl;
  return pr;
}

void criterion_6(const std::vector<ProblemRun>& runs) {
  bool all = true;
  std::vector<std::string> lines;
  for (const auto& pr : runs) {
    const auto& m = pr.means;
    const double pareto = m.at("pareto").front_size;
    const bool order = m.at("fixed_150").front_size < m.at("fixed_135").front_size &&
                       m.at("fixed_135").front_size < m.at("fixed_120").front_size &&
                       m.at("fixed_120").front_size < pareto;
    double worst_ratio = kInfinity;
    for (const auto& id : kCones) worst_ratio = std::min(worst_ratio, pareto / std::max(m.at(id).front_size, 1e-12));
    const bool ok = order && worst_ratio >= 5.0;
    all = all && ok;
    std::string line = pr.label + ": pareto " + fmt(pareto);
    for (const auto& id : kCones) line += ", " + id + " " + fmt(m.at(id).front_size);
    const bool floor = m.at("fixed_120").front_size == 1.0 && m.at("fixed_150").front_size == 1.0;
    line += "; ordering " + std::string(order ? "holds" : floor ? "tied at the one-member floor" : "broken") +
            ", min pareto/cone ratio " + fmt(worst_ratio, 3) +
            (ok ? "" : "  <-- fails");
    lines.push_back(line);
  }
  report(6, all, "mean front size fixed_150 < fixed_135 < fixed_120 << pareto (ratio >= 5) on every problem");
  for (const auto& l : lines) detail(l);
}

void criterion_7(const std::vector<ProblemRun>& runs) {
  bool all = true;
  std::vector<std::string> lines;
  for (const auto& pr : runs) {
    const double sa = pr.means.at("self_adaptive").hdist;
    const double pa = pr.means.at("pareto").hdist;
    all = all && sa > pa;
    lines.push_back(pr.label + ": self_adaptive " + fmt(sa) + " vs pareto " + fmt(pa) +
                    ", rank-sum p = " + fmt(pr.p_value("hdist", "self_adaptive", "pareto"), 3));
  }
  report(7, all, "mean offline HDist of self_adaptive exceeds pareto on every problem");
  for (const auto& l : lines) detail(l);
}

void criterion_8(const std::vector<ProblemRun>& runs) {
  bool all = true;
  std::vector<std::string> lines;
  for (const auto& pr : runs) {
    const double pa = pr.means.at("pareto").hypervolume;
    std::string line = pr.label + ": pareto " + fmt(pa);
    for (const auto& id : kCones) {
      const double v = pr.means.at(id).hypervolume;
      all = all && pa >= v;
      line += ", " + id + " " + fmt(v);
    }
    lines.push_back(line);
  }
  report(8, all, "mean normalized HV of pareto is at least every cone variant's on every problem");
  for (const auto& l : lines) detail(l);
}

void criterion_9(const ProblemRun& m4) {
  const double pa = m4.means.at("pareto").generations;
  bool all = true;
  std::string line = m4.label + ": pareto " + fmt(pa);
  for (const auto& id : kCones) {
    const double v = m4.means.at(id).generations;
    all = all && v < pa;
    line += ", " + id + " " + fmt(v);
  }
  report(9, all, "mean generations to converge of every cone variant is below pareto on Mission 4");
  detail(line);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion_10(const ProblemSelector& sel, const fs::path& first, const fs::path& second) {
  const auto start = Clock::now();
  fs::remove_all(second);
  run_experiment(study_config(sel, second));
  bool same = true;
  std::vector<std::string> lines;
  for (const char* f : {"per_run_metrics.csv", "summary.csv", "pvalues.csv"}) {
    const auto a = slurp(first / f);
    const bool eq = !a.empty() && a == slurp(second / f);
    same = same && eq;
    lines.push_back(std::string(f) + (eq ? " identical (" + std::to_string(a.size()) + " bytes)" : " DIFFERS"));
  }
  report(10, same, "rerunning the Mission 4 experiment reproduces the metric tables byte for byte");
  for (const auto& l : lines) detail(l);
  detail("rerun took " + fmt(seconds_since(start), 3) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_runs");
  try {
    const auto quick = Clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    std::cout << "  criteria 1-5 took " << fmt(seconds_since(quick), 3) << " s" << std::endl;

    const auto study = Clock::now();
    ProblemSelector knee;
    knee.kind = ProblemSelector::Kind::kKnee;
    knee.knee_n = 2;
    knee.knee_k = 1;
    std::vector<ProblemSelector> problems{knee};
    for (int id : {1, 4, 12}) {
      ProblemSelector s;
      s.kind = ProblemSelector::Kind::kMission;
      s.mission_id = id;
      s.scenario_seed = 1;
      problems.push_back(s);
    }
    std::vector<ProblemRun> runs;
    for (const auto& sel : problems) runs.push_back(run_study(sel, out / sel.label()));
    criterion_6(runs);
    criterion_7(runs);
    criterion_8(runs);
    criterion_9(runs[2]);
    std::cout << "  criteria 6-9 took " << fmt(seconds_since(study), 3) << " s" << std::endl;

    criterion_10(problems[2], out / problems[2].label(), out / (problems[2].label() + "_replay"));
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

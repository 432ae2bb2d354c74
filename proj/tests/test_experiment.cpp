#include <filesystem>
#include <fstream>
#include <sstream>

#include <algorithm>
#include <stdexcept>

#include "doctest.h"

#include "kneeopt/experiment.hpp"

using namespace kneeopt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("kneeopt_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig tiny(const fs::path& out) {
  ExperimentConfig c;
  c.problem.kind = ProblemSelector::Kind::kKnee;
  c.problem.knee_n = 3;
  c.variants = {{Variant::kPareto, 90.0}, {Variant::kFixedAngle, 90.0}, {Variant::kSelfAdaptive, 90.0}};
  c.repetitions = 2;
  c.lambda = 40;
  c.mu = 4;
  c.max_gen = 25;
  c.output_dir = out;
  c.jobs = 1;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t columns(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

}  // namespace

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  for (double v : {1.0 / 3.0, 1e-300, 123456.789, -0.25}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("experiment config json") {
  const auto j = nlohmann::json::parse(R"({
    "problem": {"kind": "mission", "mission_id": 4, "scenario_seed": 7},
    "variants": [{"variant": "pareto"}, {"variant": "fixed_angle", "theta": 135}, {"variant": "self_adaptive"}],
    "repetitions": 5, "lambda": 100, "max_gen": 50, "base_seed": 11
  })");
  const auto c = j.get<ExperimentConfig>();
  CHECK(c.problem.kind == ProblemSelector::Kind::kMission);
  CHECK(c.problem.mission_id == 4);
  CHECK(c.variants.size() == 3);
  CHECK(c.variants[1].id() == "fixed_135");
  CHECK(c.mu == 10);
  CHECK(c.algorithm(c.variants[0], 3).seed == 14);
  const nlohmann::json again = c;
  const auto c2 = again.get<ExperimentConfig>();
  CHECK(nlohmann::json(c2) == again);

  auto bad = j;
  bad["variants"] = nlohmann::json::array();
  CHECK_THROWS_AS(bad.get<ExperimentConfig>().validate(), std::invalid_argument);
  bad = j;
  bad["variants"].push_back({{"variant", "pareto"}});
  CHECK_THROWS_AS(bad.get<ExperimentConfig>().validate(), std::invalid_argument);
  bad = j;
  bad["problem"]["kind"] = "teapot";
  CHECK_THROWS(bad.get<ExperimentConfig>());
}

TEST_CASE("experiment artifacts and tables") {
  const auto dir = scratch("exp");
  const auto t = run_experiment(tiny(dir));
  CHECK(t.runs.size() == 6);
  for (const char* f : {"config.json", "per_run_metrics.csv", "summary.csv", "pvalues.csv", "reference_fronts.csv",
                        "runs/pareto/rep_0.json", "runs/self_adaptive/rep_1.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }

  // A 90 degree cone reproduces the Pareto runs exactly.
  for (std::size_t i = 0; i < t.runs.size(); ++i) {
    if (t.runs[i].config_id != "fixed_90") continue;
    for (std::size_t k = 0; k < t.runs.size(); ++k) {
      if (t.runs[k].config_id == "pareto" && t.runs[k].repetition == t.runs[i].repetition) {
        CHECK(t.runs[k].front == t.runs[i].front);
        CHECK(t.metrics[k].hypervolume == t.metrics[i].hypervolume);
      }
    }
  }
  for (const auto& m : t.metrics) {
    CHECK(m.hypervolume >= 0.0);
    CHECK(m.hypervolume <= 1.0);
    CHECK(m.hdist >= 0.0);
  }

  const auto header = lines(slurp(dir / "per_run_metrics.csv")).front();
  CHECK(header == "config_id,repetition,seed,hypervolume,front_size,hdist,generations,converged");

  // Tables are a pure function of the run artifacts.
  const auto before = slurp(dir / "summary.csv") + slurp(dir / "pvalues.csv");
  summarize(dir);
  CHECK(slurp(dir / "summary.csv") + slurp(dir / "pvalues.csv") == before);

  emit_plot_data(dir);
  const auto series = lines(slurp(dir / "plot_series.csv"));
  REQUIRE(series.size() > 1);
  CHECK(series[0] == "config_id,generation,count,theta,front_size,hypervolume,online_hdist,evaluations");
  for (const auto& l : series) CHECK(columns(l) == 8);
  const auto pc = lines(slurp(dir / "parallel_coordinates.csv"));
  REQUIRE(pc.size() > 1);
  for (const auto& l : pc) CHECK(columns(l) == columns(pc[0]));

  fs::remove(dir / "runs/pareto/rep_1.json");
  CHECK_THROWS_WITH_AS(summarize(dir), doctest::Contains("runs/pareto/rep_1.json"), std::runtime_error);
  fs::remove_all(dir);
  CHECK_THROWS_AS(summarize(dir), std::runtime_error);
}

TEST_CASE("experiment runs are byte reproducible") {
  const auto a = scratch("rep_a");
  const auto b = scratch("rep_b");
  auto ca = tiny(a);
  ca.problem.kind = ProblemSelector::Kind::kMission;
  ca.problem.mission_id = 2;
  auto cb = ca;
  cb.output_dir = b;
  cb.jobs = 2;
  run_experiment(ca);
  run_experiment(cb);
  for (const char* f : {"per_run_metrics.csv", "summary.csv", "pvalues.csv", "scenario.json"}) {
    CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("unwritable output directory fails before running") {
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "file";
  auto c = tiny(blocker / "sub");
  CHECK_THROWS_AS(run_experiment(c), std::runtime_error);
  fs::remove(blocker);
}

TEST_CASE("scenario file problems") {
  const auto dir = scratch("scen");
  fs::create_directories(dir);
  mission::save_scenario(mission::generate_scenario(mission::mission_table_row(1), 2), dir / "s.json");
  ProblemSelector sel;
  sel.kind = ProblemSelector::Kind::kScenarioFile;
  sel.scenario_path = dir / "s.json";
  const auto p = make_problem(sel);
  CHECK(p->num_objectives() == 7);
  sel.scenario_path = dir / "absent.json";
  CHECK_THROWS(make_problem(sel));
  fs::remove_all(dir);
}

#include "kneeopt/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kneeopt/knee_benchmark.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace kneeopt {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string ProblemSelector::label() const {
  switch (kind) {
    case Kind::kKnee:
      return "knee_n" + std::to_string(knee_n) + "_k" + std::to_string(knee_k);
    case Kind::kMission:
      if (mission_spec) return "mission_custom_s" + std::to_string(scenario_seed);
      return "mission_" + std::to_string(mission_id) + "_s" + std::to_string(scenario_seed);
    case Kind::kScenarioFile:
      return "scenario_" + scenario_path.stem().string();
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (variants.empty()) throw std::invalid_argument("experiment needs at least one variant");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  std::set<std::string> ids;
  for (const auto& v : variants) {
    if (!ids.insert(v.id()).second) throw std::invalid_argument("duplicate variant " + v.id());
    algorithm(v, 0).validate();
  }
}

AlgorithmConfig ExperimentConfig::algorithm(const VariantSpec& v, std::size_t repetition) const {
  AlgorithmConfig a;
  a.variant = v.variant;
  a.theta = v.theta;
  a.lambda = lambda;
  a.mu = mu;
  a.tournament_size = tournament_size;
  a.mut_probability = mut_probability;
  a.stop_gen = stop_gen;
  a.max_gen = max_gen;
  a.golden_tolerance = golden_tolerance;
  a.seed = base_seed + repetition;
  return a;
}

namespace {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kPareto:
      return "pareto";
    case Variant::kFixedAngle:
      return "fixed_angle";
    case Variant::kSelfAdaptive:
      return "self_adaptive";
  }
  return "pareto";
}

Variant parse_variant(const std::string& s) {
  if (s == "pareto") return Variant::kPareto;
  if (s == "fixed_angle") return Variant::kFixedAngle;
  if (s == "self_adaptive") return Variant::kSelfAdaptive;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

fs::path run_stem(const fs::path& dir, const std::string& id, std::size_t rep) {
  return dir / "runs" / id / ("rep_" + std::to_string(rep));
}

std::string trace_csv(const RunRecord& rec) {
  std::ostringstream out;
  out << "generation,theta,theta_a,theta_b,front_size,hypervolume,online_hdist,evaluations\n";
  for (const auto& g : rec.generations) {
    out << g.generation << ',' << format_double(g.theta) << ',' << format_double(g.theta_a) << ','
        << format_double(g.theta_b) << ',' << g.front_size << ',' << format_double(g.hypervolume) << ','
        << format_double(g.online_hdist) << ',' << g.evaluations << '\n';
  }
  return out.str();
}

}  // namespace

void to_json(json& j, const ExperimentConfig& cfg) {
  json p;
  switch (cfg.problem.kind) {
    case ProblemSelector::Kind::kKnee:
      p = {{"kind", "knee"}, {"n", cfg.problem.knee_n}, {"k", cfg.problem.knee_k}};
      break;
    case ProblemSelector::Kind::kMission:
      p = {{"kind", "mission"}, {"mission_id", cfg.problem.mission_id}, {"scenario_seed", cfg.problem.scenario_seed}};
      if (cfg.problem.mission_spec) p["spec"] = *cfg.problem.mission_spec;
      break;
    case ProblemSelector::Kind::kScenarioFile:
      p = {{"kind", "scenario_file"}, {"path", cfg.problem.scenario_path.string()}};
      break;
  }
  json variants = json::array();
  for (const auto& v : cfg.variants) {
    json e = {{"variant", variant_name(v.variant)}};
    if (v.variant == Variant::kFixedAngle) e["theta"] = v.theta;
    variants.push_back(e);
  }
  j = {{"problem", p},
       {"variants", variants},
       {"repetitions", cfg.repetitions},
       {"lambda", cfg.lambda},
       {"mu", cfg.mu},
       {"tournament_size", cfg.tournament_size},
       {"mut_probability", cfg.mut_probability},
       {"stop_gen", cfg.stop_gen},
       {"max_gen", cfg.max_gen},
       {"golden_tolerance", cfg.golden_tolerance},
       {"base_seed", cfg.base_seed},
       {"output_dir", cfg.output_dir.string()},
       {"jobs", cfg.jobs},
       {"normalization",
        cfg.normalization == HvNormalization::kSearchEnvelope ? "search_envelope" : "reference_front"}};
}

void from_json(const json& j, ExperimentConfig& cfg) {
  ExperimentConfig d;
  const json& p = j.at("problem");
  const std::string kind = p.at("kind").get<std::string>();
  if (kind == "knee") {
    d.problem.kind = ProblemSelector::Kind::kKnee;
    d.problem.knee_n = p.value("n", std::size_t{2});
    d.problem.knee_k = p.value("k", 1u);
  } else if (kind == "mission") {
    d.problem.kind = ProblemSelector::Kind::kMission;
    d.problem.mission_id = p.value("mission_id", 1);
    d.problem.scenario_seed = p.value("scenario_seed", std::uint64_t{1});
    if (p.contains("spec")) d.problem.mission_spec = p.at("spec").get<mission::MissionSpec>();
  } else if (kind == "scenario_file") {
    d.problem.kind = ProblemSelector::Kind::kScenarioFile;
    d.problem.scenario_path = p.at("path").get<std::string>();
  } else {
    throw std::invalid_argument("unknown problem kind '" + kind + "'");
  }
  for (const auto& e : j.at("variants")) {
    VariantSpec v;
    v.variant = parse_variant(e.at("variant").get<std::string>());
    if (v.variant == Variant::kFixedAngle) v.theta = e.at("theta").get<double>();
    d.variants.push_back(v);
  }
  d.repetitions = j.value("repetitions", d.repetitions);
  d.lambda = j.value("lambda", d.lambda);
  d.mu = j.value("mu", d.lambda / 10);
  d.tournament_size = j.value("tournament_size", d.tournament_size);
  d.mut_probability = j.value("mut_probability", d.mut_probability);
  d.stop_gen = j.value("stop_gen", d.stop_gen);
  d.max_gen = j.value("max_gen", d.max_gen);
  d.golden_tolerance = j.value("golden_tolerance", d.golden_tolerance);
  d.base_seed = j.value("base_seed", d.base_seed);
  d.output_dir = j.value("output_dir", d.output_dir.string());
  d.jobs = j.value("jobs", d.jobs);
  const std::string norm = j.value("normalization", std::string("search_envelope"));
  if (norm == "search_envelope") {
    d.normalization = HvNormalization::kSearchEnvelope;
  } else if (norm == "reference_front") {
    d.normalization = HvNormalization::kReferenceFront;
  } else {
    throw std::invalid_argument("unknown normalization '" + norm + "'");
  }
  cfg = std::move(d);
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  const json j = read_json(path);
  try {
    auto cfg = j.get<ExperimentConfig>();
    if (cfg.problem.kind == ProblemSelector::Kind::kScenarioFile && cfg.problem.scenario_path.is_relative()) {
      cfg.problem.scenario_path = path.parent_path() / cfg.problem.scenario_path;
    }
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::unique_ptr<Problem> make_problem(const ProblemSelector& sel) {
  switch (sel.kind) {
    case ProblemSelector::Kind::kKnee:
      return std::make_unique<KneeBenchmark>(sel.knee_n, sel.knee_k);
    case ProblemSelector::Kind::kMission: {
      const auto spec = sel.mission_spec.value_or(mission::mission_table_row(sel.mission_id));
      return std::make_unique<mission::MissionProblem>(mission::generate_scenario(spec, sel.scenario_seed),
                                                       sel.label());
    }
    case ProblemSelector::Kind::kScenarioFile:
      return std::make_unique<mission::MissionProblem>(mission::load_scenario(sel.scenario_path), sel.label());
  }
  throw std::invalid_argument("unknown problem kind");
}

json run_record_to_json(const RunRecord& rec, std::size_t repetition) {
  json front = json::array();
  for (const auto& ind : rec.final_front) {
    front.push_back({{"objectives", ind.objectives()},
                     {"constraints_satisfied", ind.fitness->constraints_satisfied},
                     {"constraints_total", ind.fitness->constraints_total}});
  }
  json trace = json::array();
  for (const auto& g : rec.generations) {
    trace.push_back({{"generation", g.generation},
                     {"theta", g.theta},
                     {"theta_a", g.theta_a},
                     {"theta_b", g.theta_b},
                     {"front_size", g.front_size},
                     {"hypervolume", g.hypervolume},
                     {"online_hdist", g.online_hdist},
                     {"evaluations", g.evaluations}});
  }
  return {{"problem", rec.problem},
          {"variant", rec.variant},
          {"repetition", repetition},
          {"seed", rec.seed},
          {"generations_to_converge", rec.generations_to_converge},
          {"converged", rec.converged},
          {"final_theta", rec.final_theta},
          {"wall_time", rec.wall_time},
          {"bounds", {{"min", rec.bounds.min_p}, {"max", rec.bounds.max_p}}},
          {"final_front", front},
          {"trace", trace}};
}

namespace {

struct LoadedRun {
  std::string config_id;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t generations = 0;
  bool converged = false;
  Bounds bounds;
  std::vector<ObjectiveVector> all;
  std::vector<ObjectiveVector> feasible;
  json trace;
};

struct Loaded {
  ExperimentConfig cfg;
  std::vector<LoadedRun> runs;  // variant-major, repetition-minor
};

Loaded load_artifacts(const fs::path& dir) {
  const fs::path cfg_path = dir / "config.json";
  if (!fs::exists(cfg_path)) throw std::runtime_error("missing artifacts in " + dir.string() + ": config.json");
  Loaded out;
  out.cfg = read_json(cfg_path).get<ExperimentConfig>();
  std::vector<std::string> missing;
  for (const auto& v : out.cfg.variants) {
    for (std::size_t r = 0; r < out.cfg.repetitions; ++r) {
      fs::path p = run_stem(dir, v.id(), r);
      p += ".json";
      if (!fs::exists(p)) missing.push_back(fs::relative(p, dir).string());
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing artifacts in " + dir.string() + ":";
    for (const auto& m : missing) msg += "\n  " + m;
    throw std::runtime_error(msg);
  }
  for (const auto& v : out.cfg.variants) {
    for (std::size_t r = 0; r < out.cfg.repetitions; ++r) {
      fs::path p = run_stem(dir, v.id(), r);
      p += ".json";
      const json j = read_json(p);
      LoadedRun run;
      run.config_id = v.id();
      run.repetition = r;
      run.seed = j.at("seed").get<std::uint64_t>();
      run.generations = j.at("generations_to_converge").get<std::size_t>();
      run.converged = j.at("converged").get<bool>();
      run.bounds.min_p = j.at("bounds").at("min").get<ObjectiveVector>();
      run.bounds.max_p = j.at("bounds").at("max").get<ObjectiveVector>();
      for (const auto& m : j.at("final_front")) {
        auto f = m.at("objectives").get<ObjectiveVector>();
        if (m.at("constraints_satisfied").get<std::uint32_t>() == m.at("constraints_total").get<std::uint32_t>()) {
          run.feasible.push_back(f);
        }
        run.all.push_back(std::move(f));
      }
      run.trace = j.at("trace");
      out.runs.push_back(std::move(run));
    }
  }
  return out;
}

// Metrics use feasible front members only, unless no run found any.
std::vector<ObjectiveVector>& usable(LoadedRun& run, bool any_feasible) {
  return any_feasible ? run.feasible : run.all;
}

ExperimentTables compute_tables(Loaded& ld) {
  ExperimentTables t;
  const auto& cfg = ld.cfg;
  const bool any_feasible =
      std::any_of(ld.runs.begin(), ld.runs.end(), [](const LoadedRun& r) { return !r.feasible.empty(); });

  std::size_t m = 0;
  for (auto& r : ld.runs) {
    for (const auto& f : usable(r, any_feasible)) m = f.size();
  }
  Bounds& nb = t.normalization;
  nb.min_p.assign(m, kInfinity);
  nb.max_p.assign(m, -kInfinity);
  auto widen = [&](const ObjectiveVector& lo, const ObjectiveVector& hi) {
    for (std::size_t k = 0; k < m; ++k) {
      nb.min_p[k] = std::min(nb.min_p[k], lo[k]);
      nb.max_p[k] = std::max(nb.max_p[k], hi[k]);
    }
  };
  for (auto& r : ld.runs) {
    if (cfg.normalization == HvNormalization::kSearchEnvelope && r.bounds.dimension() == m) {
      widen(r.bounds.min_p, r.bounds.max_p);
    } else {
      for (const auto& f : usable(r, any_feasible)) widen(f, f);
    }
  }
  const ObjectiveVector ref(m, 1.0);
  auto normalized = [&](const std::vector<ObjectiveVector>& pts) {
    std::vector<ObjectiveVector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(normalize(p, nb));
    return out;
  };

  t.reference_fronts.resize(cfg.repetitions);
  std::vector<double> reference_hv(cfg.repetitions, 0.0);
  std::vector<std::size_t> reference_size(cfg.repetitions, 0);
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    std::vector<ObjectiveVector> merged;
    for (auto& r : ld.runs) {
      if (r.repetition != rep) continue;
      const auto& u = usable(r, any_feasible);
      merged.insert(merged.end(), u.begin(), u.end());
    }
    t.reference_fronts[rep] = nondominated_unique(merged);
    if (m > 0) reference_hv[rep] = hypervolume(normalized(t.reference_fronts[rep]), ref);
    reference_size[rep] = t.reference_fronts[rep].size();
  }

  for (auto& r : ld.runs) {
    RunArtifact a;
    a.config_id = r.config_id;
    a.repetition = r.repetition;
    a.seed = r.seed;
    a.generations = r.generations;
    a.converged = r.converged;
    a.front = usable(r, any_feasible);
    a.front_size = r.all.size();

    RunMetrics rm;
    rm.config_id = r.config_id;
    rm.front_size = static_cast<double>(a.front_size);
    rm.generations = static_cast<double>(a.generations);
    if (m > 0 && !a.front.empty()) {
      const auto s = normalized(nondominated_unique(a.front));
      rm.hypervolume = hypervolume(s, ref);
      if (reference_hv[r.repetition] > 0.0) {
        const double p_size = static_cast<double>(reference_size[r.repetition]);
        const double count = std::max(0.0, (p_size - static_cast<double>(s.size())) / p_size);
        rm.hdist = count * rm.hypervolume / reference_hv[r.repetition];
      }
    }
    t.runs.push_back(std::move(a));
    t.metrics.push_back(rm);
  }

  t.summary = front_stats(t.metrics);

  static const char* kMetrics[] = {"hypervolume", "front_size", "hdist", "generations"};
  auto column = [&](const std::string& id, int metric) {
    std::vector<double> out;
    for (const auto& rm : t.metrics) {
      if (rm.config_id != id) continue;
      const double vals[] = {rm.hypervolume, rm.front_size, rm.hdist, rm.generations};
      out.push_back(vals[metric]);
    }
    return out;
  };
  for (int metric = 0; metric < 4; ++metric) {
    for (std::size_t a = 0; a < cfg.variants.size(); ++a) {
      for (std::size_t b = a + 1; b < cfg.variants.size(); ++b) {
        const auto ia = cfg.variants[a].id();
        const auto ib = cfg.variants[b].id();
        t.p_values.push_back({kMetrics[metric], ia, ib, rank_sum_test(column(ia, metric), column(ib, metric))});
      }
    }
  }
  return t;
}

void write_tables(const fs::path& dir, const ExperimentTables& t) {
  std::ostringstream runs;
  runs << "config_id,repetition,seed,hypervolume,front_size,hdist,generations,converged\n";
  for (std::size_t i = 0; i < t.runs.size(); ++i) {
    const auto& a = t.runs[i];
    const auto& rm = t.metrics[i];
    runs << a.config_id << ',' << a.repetition << ',' << a.seed << ',' << format_double(rm.hypervolume) << ','
         << a.front_size << ',' << format_double(rm.hdist) << ',' << a.generations << ','
         << (a.converged ? "true" : "false") << '\n';
  }
  write_text(dir / "per_run_metrics.csv", runs.str());

  std::ostringstream summary;
  summary << "config_id,metric,mean,std,n\n";
  for (const auto& row : t.summary) {
    summary << row.config_id << ',' << row.metric << ',' << format_double(row.stats.mean) << ','
            << format_double(row.stats.stddev) << ',' << row.stats.n << '\n';
  }
  write_text(dir / "summary.csv", summary.str());

  std::ostringstream pv;
  pv << "metric,config_a,config_b,p_value\n";
  for (const auto& p : t.p_values) {
    pv << p.metric << ',' << p.config_a << ',' << p.config_b << ',' << format_double(p.p_value) << '\n';
  }
  write_text(dir / "pvalues.csv", pv.str());

  std::ostringstream ref;
  ref << "repetition,member";
  for (std::size_t k = 0; k < t.normalization.dimension(); ++k) ref << ",f" << k + 1;
  ref << '\n';
  for (std::size_t rep = 0; rep < t.reference_fronts.size(); ++rep) {
    for (std::size_t i = 0; i < t.reference_fronts[rep].size(); ++i) {
      ref << rep << ',' << i;
      for (double v : t.reference_fronts[rep][i]) ref << ',' << format_double(v);
      ref << '\n';
    }
  }
  write_text(dir / "reference_fronts.csv", ref.str());
}

}  // namespace

ExperimentTables run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  json stored = cfg;
  write_text(dir / "config.json", stored.dump(2) + "\n");
  for (const auto& v : cfg.variants) {
    fs::create_directories(dir / "runs" / v.id(), ec);
    if (ec) throw std::runtime_error("cannot create " + (dir / "runs" / v.id()).string() + ": " + ec.message());
  }

  const auto problem = make_problem(cfg.problem);
  if (const auto* mp = dynamic_cast<const mission::MissionProblem*>(problem.get())) {
    mission::save_scenario(mp->scenario(), dir / "scenario.json");
  }

  struct Job {
    const VariantSpec* variant;
    std::size_t repetition;
  };
  std::vector<Job> jobs;
  for (const auto& v : cfg.variants) {
    for (std::size_t r = 0; r < cfg.repetitions; ++r) jobs.push_back({&v, r});
  }
  const int threads = cfg.jobs > 0 ? static_cast<int>(cfg.jobs) : omp_get_max_threads();
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    try {
      auto algo = cfg.algorithm(*job.variant, job.repetition);
      algo.parallel_evaluation = threads == 1;
      const RunRecord rec = run(*problem, algo);
      const fs::path stem = run_stem(dir, job.variant->id(), job.repetition);
      write_text(fs::path(stem).concat(".json"), run_record_to_json(rec, job.repetition).dump(1) + "\n");
      write_text(fs::path(stem).concat(".csv"), trace_csv(rec));
    } catch (...) {
#pragma omp critical(kneeopt_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(dir);
}

ExperimentTables summarize(const fs::path& dir) {
  Loaded ld = load_artifacts(dir);
  ExperimentTables t = compute_tables(ld);
  write_tables(dir, t);
  return t;
}

void emit_plot_data(const fs::path& dir) {
  Loaded ld = load_artifacts(dir);
  const ExperimentTables t = compute_tables(ld);

  std::ostringstream series;
  series << "config_id,generation,count,theta,front_size,hypervolume,online_hdist,evaluations\n";
  for (const auto& v : ld.cfg.variants) {
    const std::string id = v.id();
    std::size_t longest = 0;
    for (const auto& r : ld.runs) {
      if (r.config_id == id) longest = std::max(longest, r.trace.size());
    }
    for (std::size_t g = 0; g < longest; ++g) {
      std::size_t count = 0;
      double sums[5] = {0, 0, 0, 0, 0};
      for (const auto& r : ld.runs) {
        if (r.config_id != id || g >= r.trace.size()) continue;
        const json& e = r.trace[g];
        ++count;
        sums[0] += e.at("theta").get<double>();
        sums[1] += e.at("front_size").get<double>();
        sums[2] += e.at("hypervolume").get<double>();
        sums[3] += e.at("online_hdist").get<double>();
        sums[4] += e.at("evaluations").get<double>();
      }
      series << id << ',' << g + 1 << ',' << count;
      for (double s : sums) series << ',' << format_double(s / static_cast<double>(count));
      series << '\n';
    }
  }
  write_text(dir / "plot_series.csv", series.str());

  const std::size_t m = t.normalization.dimension();
  std::ostringstream pc;
  pc << "config_id,repetition,member";
  for (std::size_t k = 0; k < m; ++k) pc << ",f" << k + 1;
  pc << '\n';
  for (const auto& a : t.runs) {
    for (std::size_t i = 0; i < a.front.size(); ++i) {
      pc << a.config_id << ',' << a.repetition << ',' << i;
      for (double v : normalize(a.front[i], t.normalization)) pc << ',' << format_double(v);
      pc << '\n';
    }
  }
  write_text(dir / "parallel_coordinates.csv", pc.str());
}

}  // namespace kneeopt

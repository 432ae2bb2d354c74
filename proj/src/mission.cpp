#include "kneeopt/mission.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace kneeopt::mission {

bool Uav::carries(int s) const { return std::binary_search(sensors.begin(), sensors.end(), s); }

double MissionScenario::leg_penalty(std::size_t a, std::size_t b) const {
  double extra = 0.0;
  for (const auto& p : nfz_penalties) {
    if ((p.task_a == a && p.task_b == b) || (p.task_a == b && p.task_b == a)) extra += p.extra_km;
  }
  return extra;
}

void MissionScenario::validate() const {
  const std::size_t t_count = tasks.size();
  if (uavs.empty()) throw std::invalid_argument("scenario has no UAVs");
  if (gcss.empty()) throw std::invalid_argument("scenario has no ground control stations");
  if (uavs.size() > 16) throw std::invalid_argument("at most 16 UAVs are supported");
  for (const auto& u : uavs) {
    if (!(u.speed_kmh > 0.0) || !(u.fuel_capacity_l > 0.0) || !(u.fuel_rate_lph > 0.0) || u.cost_rate_ph < 0.0) {
      throw std::invalid_argument("UAV with non-positive speed, fuel or negative cost rate");
    }
    if (!std::is_sorted(u.sensors.begin(), u.sensors.end()) ||
        std::adjacent_find(u.sensors.begin(), u.sensors.end()) != u.sensors.end()) {
      throw std::invalid_argument("UAV sensor list must be sorted and unique");
    }
  }
  for (const auto& t : tasks) {
    if (t.required_sensor < 0 || t.required_sensor >= kNumSensors) throw std::invalid_argument("unknown sensor");
    const auto carriers = std::count_if(uavs.begin(), uavs.end(), [&](const Uav& u) { return u.carries(t.required_sensor); });
    const auto needed = t.multi_uav ? static_cast<long>(kMultiUavRequired) : 1L;
    if (carriers < needed) throw std::invalid_argument("required sensor not carried by enough UAVs");
    if (t.duration_min < 0.0) throw std::invalid_argument("negative task duration");
  }
  for (const auto& p : nfz_penalties) {
    if (p.task_a >= t_count || p.task_b >= t_count || p.task_a == p.task_b || p.extra_km < 0.0) {
      throw std::invalid_argument("malformed no-fly-zone penalty");
    }
  }
  // Kahn's algorithm over the dependency graph.
  std::vector<std::vector<std::size_t>> succ(t_count);
  std::vector<std::size_t> indeg(t_count, 0);
  for (const auto& d : dependencies) {
    if (d.before >= t_count || d.after >= t_count || d.before == d.after) {
      throw std::invalid_argument("malformed dependency");
    }
    succ[d.before].push_back(d.after);
    ++indeg[d.after];
  }
  std::vector<std::size_t> ready;
  for (std::size_t t = 0; t < t_count; ++t) {
    if (indeg[t] == 0) ready.push_back(t);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t t = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t s : succ[t]) {
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  if (seen != t_count) throw std::invalid_argument("dependency graph has a cycle");
}

MissionSpec mission_table_row(int mission_id) {
  static constexpr MissionSpec kRows[] = {
      {5, 0, 3, 1, 0, 0},   {6, 1, 3, 1, 1, 0},  {6, 1, 4, 2, 2, 1},  {7, 1, 5, 2, 1, 2},
      {8, 2, 5, 2, 3, 1},   {9, 2, 5, 2, 0, 2},  {9, 2, 6, 2, 2, 2},  {10, 2, 6, 2, 3, 3},
      {11, 3, 6, 2, 3, 2},  {12, 3, 7, 3, 0, 2}, {12, 3, 8, 3, 2, 3}, {13, 4, 7, 3, 4, 4},
  };
  if (mission_id < 1 || mission_id > 12) throw std::out_of_range("mission id must be in 1..12");
  return kRows[mission_id - 1];
}

MissionScenario generate_scenario(const MissionSpec& spec, std::uint64_t seed) {
  const std::size_t t_count = spec.tasks;
  const std::size_t pairs = t_count * (t_count > 0 ? t_count - 1 : 0) / 2;
  if (spec.uavs < 1 || spec.gcss < 1) throw std::invalid_argument("need at least one UAV and one GCS");
  if (spec.uavs > 16) throw std::invalid_argument("at most 16 UAVs are supported");
  if (spec.multi_uav_tasks > t_count) throw std::invalid_argument("more multi-UAV tasks than tasks");
  if (spec.multi_uav_tasks > 0 && spec.uavs < kMultiUavRequired) {
    throw std::invalid_argument("multi-UAV tasks need at least two UAVs");
  }
  if (spec.dependencies > pairs) throw std::invalid_argument("more dependencies than acyclic task pairs");
  if (spec.nfzs > pairs) throw std::invalid_argument("more no-fly zones than task pairs");

  Rng rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::uniform_int_distribution<int> sensor_pick(0, kNumSensors - 1);

  MissionScenario sc;
  sc.tasks.resize(t_count);
  for (auto& t : sc.tasks) {
    t.position = {coord(rng), coord(rng)};
    t.duration_min = uniform(5.0, 30.0);
    t.required_sensor = sensor_pick(rng);
  }
  std::vector<std::size_t> idx(t_count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t k = 0; k < spec.multi_uav_tasks; ++k) sc.tasks[idx[k]].multi_uav = true;

  sc.uavs.resize(spec.uavs);
  std::bernoulli_distribution carry(0.5);
  for (auto& u : sc.uavs) {
    u.base = {coord(rng), coord(rng)};
    u.speed_kmh = uniform(80.0, 160.0);
    u.fuel_rate_lph = uniform(8.0, 20.0);
    u.fuel_capacity_l = u.fuel_rate_lph * uniform(3.0, 6.0);
    u.cost_rate_ph = uniform(50.0, 250.0);
    for (int s = 0; s < kNumSensors; ++s) {
      if (carry(rng)) u.sensors.push_back(s);
    }
    if (u.sensors.empty()) u.sensors.push_back(sensor_pick(rng));
  }
  // Coverage: every required sensor on enough vehicles.
  std::uniform_int_distribution<std::size_t> uav_pick(0, spec.uavs - 1);
  for (const auto& t : sc.tasks) {
    const std::size_t needed = t.multi_uav ? kMultiUavRequired : 1;
    while (static_cast<std::size_t>(std::count_if(sc.uavs.begin(), sc.uavs.end(), [&](const Uav& u) {
             return u.carries(t.required_sensor);
           })) < needed) {
      auto& u = sc.uavs[uav_pick(rng)];
      if (!u.carries(t.required_sensor)) {
        u.sensors.insert(std::upper_bound(u.sensors.begin(), u.sensors.end(), t.required_sensor), t.required_sensor);
      }
    }
  }

  sc.gcss.resize(spec.gcss);
  const auto base_capacity = static_cast<std::uint32_t>((spec.uavs + spec.gcss - 1) / spec.gcss);
  std::uniform_int_distribution<std::uint32_t> slack(0, 1);
  for (auto& g : sc.gcss) g.capacity = base_capacity + slack(rng);

  std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
  for (std::size_t a = 0; a < t_count; ++a) {
    for (std::size_t b = a + 1; b < t_count; ++b) all_pairs.emplace_back(a, b);
  }
  std::shuffle(all_pairs.begin(), all_pairs.end(), rng);
  for (std::size_t k = 0; k < spec.nfzs; ++k) {
    sc.nfz_penalties.push_back({all_pairs[k].first, all_pairs[k].second, uniform(5.0, 30.0)});
  }

  // Dependencies follow a random topological order, so they are acyclic.
  std::vector<std::size_t> topo(t_count);
  std::iota(topo.begin(), topo.end(), std::size_t{0});
  std::shuffle(topo.begin(), topo.end(), rng);
  std::shuffle(all_pairs.begin(), all_pairs.end(), rng);
  for (std::size_t k = 0; k < spec.dependencies; ++k) {
    sc.dependencies.push_back({topo[all_pairs[k].first], topo[all_pairs[k].second]});
  }
  sc.validate();
  return sc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::json point_json(const Point2& p) { return nlohmann::json::array({p.x, p.y}); }
Point2 point_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

void to_json(nlohmann::json& j, const MissionScenario& sc) {
  j = nlohmann::json::object();
  auto& tasks = j["tasks"] = nlohmann::json::array();
  for (const auto& t : sc.tasks) {
    tasks.push_back({{"position", point_json(t.position)},
                     {"duration_min", t.duration_min},
                     {"multi_uav", t.multi_uav},
                     {"required_sensor", t.required_sensor}});
  }
  auto& uavs = j["uavs"] = nlohmann::json::array();
  for (const auto& u : sc.uavs) {
    uavs.push_back({{"base", point_json(u.base)},
                    {"speed_kmh", u.speed_kmh},
                    {"fuel_capacity_l", u.fuel_capacity_l},
                    {"fuel_rate_lph", u.fuel_rate_lph},
                    {"cost_rate_ph", u.cost_rate_ph},
                    {"sensors", u.sensors}});
  }
  auto& gcss = j["gcss"] = nlohmann::json::array();
  for (const auto& g : sc.gcss) gcss.push_back({{"capacity", g.capacity}});
  auto& pen = j["penalties"] = nlohmann::json::array();
  for (const auto& p : sc.nfz_penalties) {
    pen.push_back({{"task_a", p.task_a}, {"task_b", p.task_b}, {"extra_km", p.extra_km}});
  }
  auto& deps = j["dependencies"] = nlohmann::json::array();
  for (const auto& d : sc.dependencies) deps.push_back({{"before", d.before}, {"after", d.after}});
}

void from_json(const nlohmann::json& j, MissionScenario& sc) {
  sc = MissionScenario{};
  for (const auto& t : j.at("tasks")) {
    sc.tasks.push_back({point_from(t.at("position")), t.at("duration_min").get<double>(),
                        t.at("multi_uav").get<bool>(), t.at("required_sensor").get<int>()});
  }
  for (const auto& u : j.at("uavs")) {
    Uav v;
    v.base = point_from(u.at("base"));
    v.speed_kmh = u.at("speed_kmh").get<double>();
    v.fuel_capacity_l = u.at("fuel_capacity_l").get<double>();
    v.fuel_rate_lph = u.at("fuel_rate_lph").get<double>();
    v.cost_rate_ph = u.at("cost_rate_ph").get<double>();
    v.sensors = u.at("sensors").get<std::vector<int>>();
    sc.uavs.push_back(std::move(v));
  }
  for (const auto& g : j.at("gcss")) sc.gcss.push_back({g.at("capacity").get<std::uint32_t>()});
  for (const auto& p : j.at("penalties")) {
    sc.nfz_penalties.push_back(
        {p.at("task_a").get<std::size_t>(), p.at("task_b").get<std::size_t>(), p.at("extra_km").get<double>()});
  }
  for (const auto& d : j.at("dependencies")) {
    sc.dependencies.push_back({d.at("before").get<std::size_t>(), d.at("after").get<std::size_t>()});
  }
  sc.validate();
}

void to_json(nlohmann::json& j, const MissionSpec& s) {
  j = {{"tasks", s.tasks}, {"multi_uav_tasks", s.multi_uav_tasks}, {"uavs", s.uavs},
       {"gcss", s.gcss},   {"nfzs", s.nfzs},                       {"dependencies", s.dependencies}};
}

void from_json(const nlohmann::json& j, MissionSpec& s) {
  s.tasks = j.at("tasks").get<std::size_t>();
  s.multi_uav_tasks = j.at("multi_uav_tasks").get<std::size_t>();
  s.uavs = j.at("uavs").get<std::size_t>();
  s.gcss = j.at("gcss").get<std::size_t>();
  s.nfzs = j.at("nfzs").get<std::size_t>();
  s.dependencies = j.at("dependencies").get<std::size_t>();
}

void save_scenario(const MissionScenario& sc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file " + path.string());
  out << nlohmann::json(sc).dump(2) << '\n';
}

MissionScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  return nlohmann::json::parse(in).get<MissionScenario>();
}

// ---------------------------------------------------------------------------
// Genome

std::vector<std::size_t> assigned_uavs(const MissionGenome& g, const MissionScenario& sc, std::size_t t) {
  std::vector<std::size_t> out;
  if (sc.tasks[t].multi_uav) {
    for (std::size_t u = 0; u < sc.uavs.size(); ++u) {
      if (g.assignment[t] & (1u << u)) out.push_back(u);
    }
  } else {
    out.push_back(g.assignment[t]);
  }
  return out;
}

bool genome_valid(const MissionGenome& g, const MissionScenario& sc) {
  const std::size_t t_count = sc.tasks.size();
  const std::size_t u_count = sc.uavs.size();
  if (g.assignment.size() != t_count || g.order.size() != t_count || g.sensor.size() != t_count ||
      g.leg_profile.size() != t_count || g.gcs.size() != u_count || g.return_profile.size() != u_count) {
    return false;
  }
  const std::uint32_t full_mask = (1u << u_count) - 1u;
  for (std::size_t t = 0; t < t_count; ++t) {
    if (sc.tasks[t].multi_uav) {
      if (g.assignment[t] == 0 || g.assignment[t] > full_mask) return false;
    } else if (g.assignment[t] >= u_count) {
      return false;
    }
    if (g.sensor[t] >= static_cast<std::uint32_t>(kNumSensors) || g.leg_profile[t] > 1) return false;
  }
  std::vector<bool> seen(t_count, false);
  for (auto r : g.order) {
    if (r >= t_count || seen[r]) return false;
    seen[r] = true;
  }
  for (std::size_t u = 0; u < u_count; ++u) {
    if (g.gcs[u] >= sc.gcss.size() || g.return_profile[u] > 1) return false;
  }
  return true;
}

Genome encode(const MissionGenome& g) {
  Genome out;
  for (const auto* part : {&g.assignment, &g.order, &g.gcs, &g.sensor, &g.leg_profile, &g.return_profile}) {
    for (auto v : *part) out.ints.push_back(static_cast<std::int32_t>(v));
  }
  return out;
}

MissionGenome decode(const Genome& g, const MissionScenario& sc) {
  const std::size_t t_count = sc.tasks.size();
  const std::size_t u_count = sc.uavs.size();
  if (!g.reals.empty() || g.ints.size() != 4 * t_count + 2 * u_count) {
    throw std::invalid_argument("mission genome has the wrong length");
  }
  MissionGenome out;
  auto it = g.ints.begin();
  auto take = [&](std::vector<std::uint32_t>& dst, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++it) {
      if (*it < 0) throw std::invalid_argument("negative allele in mission genome");
      dst.push_back(static_cast<std::uint32_t>(*it));
    }
  };
  take(out.assignment, t_count);
  take(out.order, t_count);
  take(out.gcs, u_count);
  take(out.sensor, t_count);
  take(out.leg_profile, t_count);
  take(out.return_profile, u_count);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

std::uint32_t mission_constraints_total(const MissionScenario& sc) {
  const auto multi = std::count_if(sc.tasks.begin(), sc.tasks.end(), [](const Task& t) { return t.multi_uav; });
  return static_cast<std::uint32_t>(sc.tasks.size() + static_cast<std::size_t>(multi) + sc.gcss.size() +
                                    sc.uavs.size() + sc.dependencies.size());
}

namespace {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Visit {
  std::size_t uav;
  std::size_t task;
};

// Tarjan's strongly connected components; returns a component id per node.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;
  std::size_t comps = 0;
  // Iterative DFS frames: (node, next edge position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        const std::size_t w = adj[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

Fitness mission_evaluate(const MissionGenome& g, const MissionScenario& sc) {
  if (!genome_valid(g, sc)) throw std::invalid_argument("mission genome outside its schema");
  const std::size_t t_count = sc.tasks.size();
  const std::size_t u_count = sc.uavs.size();

  std::vector<std::vector<std::size_t>> performers(t_count);
  std::vector<std::vector<std::size_t>> route(u_count);  // task ids in visiting order
  for (std::size_t t = 0; t < t_count; ++t) {
    performers[t] = assigned_uavs(g, sc, t);
    for (std::size_t u : performers[t]) route[u].push_back(t);
  }
  for (auto& r : route) {
    std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return g.order[a] < g.order[b]; });
  }

  // One node per (UAV, task) visit.
  std::vector<Visit> visits;
  std::vector<std::vector<std::size_t>> visits_of_task(t_count);
  std::vector<std::vector<std::size_t>> visit_ids(u_count);
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t t : route[u]) {
      visit_ids[u].push_back(visits.size());
      visits_of_task[t].push_back(visits.size());
      visits.push_back({u, t});
    }
  }
  const std::size_t v_count = visits.size();

  // Route edges plus all-to-all dependency edges; a dependency whose edges
  // close a cycle cannot be honoured by these routes.
  std::vector<std::vector<std::size_t>> adj(v_count);
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t k = 1; k < visit_ids[u].size(); ++k) adj[visit_ids[u][k - 1]].push_back(visit_ids[u][k]);
  }
  for (const auto& d : sc.dependencies) {
    for (std::size_t a : visits_of_task[d.before]) {
      for (std::size_t b : visits_of_task[d.after]) adj[a].push_back(b);
    }
  }
  const auto comp = strong_components(adj);
  std::vector<bool> dep_ok(sc.dependencies.size(), true);
  for (std::size_t k = 0; k < sc.dependencies.size(); ++k) {
    const auto& d = sc.dependencies[k];
    for (std::size_t a : visits_of_task[d.before]) {
      for (std::size_t b : visits_of_task[d.after]) {
        if (comp[a] == comp[b]) dep_ok[k] = false;
      }
    }
  }

  // Honoured precedence: finishing times of prerequisite visits.
  std::vector<std::vector<std::size_t>> waits_on(v_count);
  std::vector<std::vector<std::size_t>> releases(v_count);
  std::vector<std::size_t> pending(v_count, 0);
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t k = 1; k < visit_ids[u].size(); ++k) {
      releases[visit_ids[u][k - 1]].push_back(visit_ids[u][k]);
      ++pending[visit_ids[u][k]];
    }
  }
  for (std::size_t k = 0; k < sc.dependencies.size(); ++k) {
    if (!dep_ok[k]) continue;
    const auto& d = sc.dependencies[k];
    for (std::size_t a : visits_of_task[d.before]) {
      for (std::size_t b : visits_of_task[d.after]) {
        waits_on[b].push_back(a);
        releases[a].push_back(b);
        ++pending[b];
      }
    }
  }

  // Per-visit travel leg into the visit and on-site work.
  std::vector<double> leg_km(v_count), leg_h(v_count), work_h(v_count);
  for (std::size_t u = 0; u < u_count; ++u) {
    const auto& uav = sc.uavs[u];
    Point2 at = uav.base;
    std::size_t prev_task = static_cast<std::size_t>(-1);
    for (std::size_t id : visit_ids[u]) {
      const std::size_t t = visits[id].task;
      double km = distance(at, sc.tasks[t].position);
      if (prev_task != static_cast<std::size_t>(-1)) km += sc.leg_penalty(prev_task, t);
      leg_km[id] = km;
      leg_h[id] = km / (uav.speed_kmh * kProfileSpeed[g.leg_profile[t]]);
      work_h[id] = sc.tasks[t].duration_min / 60.0 / static_cast<double>(performers[t].size());
      at = sc.tasks[t].position;
      prev_task = t;
    }
  }

  std::vector<double> finish(v_count, 0.0);
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < v_count; ++v) {
    if (pending[v] == 0) ready.push_back(v);
  }
  std::vector<std::size_t> position_in_route(v_count, 0);
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t k = 0; k < visit_ids[u].size(); ++k) position_in_route[visit_ids[u][k]] = k;
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++processed;
    const std::size_t u = visits[v].uav;
    const std::size_t pos = position_in_route[v];
    const double depart = pos == 0 ? 0.0 : finish[visit_ids[u][pos - 1]];
    double start = depart + leg_h[v];
    for (std::size_t a : waits_on[v]) start = std::max(start, finish[a]);
    finish[v] = start + work_h[v];
    for (std::size_t w : releases[v]) {
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  if (processed != v_count) throw std::logic_error("mission schedule left a cycle after pruning");

  double cost = 0.0, makespan = 0.0, risk_sum = 0.0, fuel = 0.0, flight = 0.0, km_total = 0.0;
  std::size_t used = 0;
  std::uint32_t satisfied = 0;
  for (std::size_t u = 0; u < u_count; ++u) {
    const auto& uav = sc.uavs[u];
    if (visit_ids[u].empty()) {
      ++satisfied;  // fuel constraint holds trivially
      continue;
    }
    ++used;
    double hours = 0.0, litres = 0.0, km = 0.0;
    for (std::size_t id : visit_ids[u]) {
      const std::size_t t = visits[id].task;
      hours += leg_h[id] + work_h[id];
      litres += uav.fuel_rate_lph * (kProfileFuel[g.leg_profile[t]] * leg_h[id] + work_h[id]);
      km += leg_km[id];
    }
    const std::size_t last = visit_ids[u].back();
    const double back_km = distance(sc.tasks[visits[last].task].position, uav.base);
    const double back_h = back_km / (uav.speed_kmh * kProfileSpeed[g.return_profile[u]]);
    hours += back_h;
    litres += uav.fuel_rate_lph * kProfileFuel[g.return_profile[u]] * back_h;
    km += back_km;

    makespan = std::max(makespan, finish[last] + back_h);
    cost += hours * uav.cost_rate_ph;
    fuel += litres;
    flight += hours;
    km_total += km;
    risk_sum += std::min(litres / uav.fuel_capacity_l, 1.0) * 100.0;
    if (litres <= uav.fuel_capacity_l) ++satisfied;
  }

  for (std::size_t t = 0; t < t_count; ++t) {
    const int s = static_cast<int>(g.sensor[t]);
    const bool carried = std::all_of(performers[t].begin(), performers[t].end(),
                                     [&](std::size_t u) { return sc.uavs[u].carries(s); });
    if (s == sc.tasks[t].required_sensor && carried) ++satisfied;
    if (sc.tasks[t].multi_uav && performers[t].size() >= kMultiUavRequired) ++satisfied;
  }
  for (std::size_t gi = 0; gi < sc.gcss.size(); ++gi) {
    std::uint32_t controlled = 0;
    for (std::size_t u = 0; u < u_count; ++u) {
      if (!visit_ids[u].empty() && g.gcs[u] == gi) ++controlled;
    }
    if (controlled <= sc.gcss[gi].capacity) ++satisfied;
  }
  satisfied += static_cast<std::uint32_t>(std::count(dep_ok.begin(), dep_ok.end(), true));

  Fitness f;
  f.objectives.assign(kNumObjectives, 0.0);
  f.objectives[kCost] = cost;
  f.objectives[kMakespan] = makespan;
  f.objectives[kRisk] = risk_sum / static_cast<double>(u_count);
  f.objectives[kUavCount] = static_cast<double>(used);
  f.objectives[kFuel] = fuel;
  f.objectives[kFlightTime] = flight;
  f.objectives[kDistance] = km_total;
  f.constraints_total = mission_constraints_total(sc);
  f.constraints_satisfied = satisfied;
  return f;
}

// ---------------------------------------------------------------------------
// Problem adapter

MissionProblem::MissionProblem(MissionScenario sc, std::string label) : sc_(std::move(sc)), label_(std::move(label)) {
  sc_.validate();
}

ObjectiveVector MissionProblem::objective_upper_bounds() const {
  // Loose envelope: every task flown by every UAV along the square's
  // diagonal plus every penalty, at slow speed.
  const double t_count = static_cast<double>(sc_.tasks.size());
  const double u_count = static_cast<double>(sc_.uavs.size());
  double penalties = 0.0;
  for (const auto& p : sc_.nfz_penalties) penalties += p.extra_km;
  double work_h = 0.0;
  for (const auto& t : sc_.tasks) work_h += t.duration_min / 60.0;
  double min_speed = kInfinity, max_rate = 0.0, max_cost = 0.0;
  for (const auto& u : sc_.uavs) {
    min_speed = std::min(min_speed, u.speed_kmh * kProfileSpeed[0]);
    max_rate = std::max(max_rate, u.fuel_rate_lph);
    max_cost = std::max(max_cost, u.cost_rate_ph);
  }
  const double km = u_count * ((t_count + 1.0) * 100.0 * std::sqrt(2.0) + penalties);
  const double hours = km / min_speed + work_h * u_count;
  ObjectiveVector ub(kNumObjectives);
  ub[kCost] = 10.0 * hours * max_cost;
  ub[kMakespan] = 10.0 * hours;
  ub[kRisk] = 1000.0;
  ub[kUavCount] = 10.0 * u_count;
  ub[kFuel] = 10.0 * hours * max_rate;
  ub[kFlightTime] = 10.0 * hours;
  ub[kDistance] = 10.0 * km;
  return ub;
}

Genome MissionProblem::random_genome(Rng& rng) const {
  const std::size_t t_count = sc_.tasks.size();
  const std::size_t u_count = sc_.uavs.size();
  MissionGenome g;
  std::uniform_int_distribution<std::uint32_t> uav_pick(0, static_cast<std::uint32_t>(u_count - 1));
  std::uniform_int_distribution<std::uint32_t> mask_pick(1, (1u << u_count) - 1u);
  std::uniform_int_distribution<std::uint32_t> gcs_pick(0, static_cast<std::uint32_t>(sc_.gcss.size() - 1));
  std::uniform_int_distribution<std::uint32_t> sensor_pick(0, kNumSensors - 1);
  std::uniform_int_distribution<std::uint32_t> profile_pick(0, 1);
  for (std::size_t t = 0; t < t_count; ++t) {
    g.assignment.push_back(sc_.tasks[t].multi_uav ? mask_pick(rng) : uav_pick(rng));
  }
  g.order.resize(t_count);
  std::iota(g.order.begin(), g.order.end(), 0u);
  std::shuffle(g.order.begin(), g.order.end(), rng);
  for (std::size_t u = 0; u < u_count; ++u) g.gcs.push_back(gcs_pick(rng));
  for (std::size_t t = 0; t < t_count; ++t) g.sensor.push_back(sensor_pick(rng));
  for (std::size_t t = 0; t < t_count; ++t) g.leg_profile.push_back(profile_pick(rng));
  for (std::size_t u = 0; u < u_count; ++u) g.return_profile.push_back(profile_pick(rng));
  return encode(g);
}

bool MissionProblem::valid(const Genome& g) const {
  if (!g.reals.empty() || g.ints.size() != 4 * sc_.tasks.size() + 2 * sc_.uavs.size()) return false;
  for (auto v : g.ints) {
    if (v < 0) return false;
  }
  return genome_valid(decode(g, sc_), sc_);
}

Fitness MissionProblem::evaluate(const Genome& g) const { return mission_evaluate(decode(g, sc_), sc_); }

std::pair<Genome, Genome> MissionProblem::crossover(const Genome& p1, const Genome& p2, Rng& rng) const {
  auto a = decode(p1, sc_);
  auto b = decode(p2, sc_);
  std::bernoulli_distribution coin(0.5);
  auto exchange = [&](std::vector<std::uint32_t>& x, std::vector<std::uint32_t>& y) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (coin(rng)) std::swap(x[k], y[k]);
    }
  };
  exchange(a.assignment, b.assignment);
  if (coin(rng)) std::swap(a.order, b.order);
  exchange(a.gcs, b.gcs);
  exchange(a.sensor, b.sensor);
  exchange(a.leg_profile, b.leg_profile);
  exchange(a.return_profile, b.return_profile);
  return {encode(a), encode(b)};
}

Genome MissionProblem::mutate(const Genome& genome, double prob, Rng& rng) const {
  auto g = decode(genome, sc_);
  const std::size_t t_count = sc_.tasks.size();
  const std::size_t u_count = sc_.uavs.size();
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto hit = [&] { return u01(rng) < prob; };
  auto draw = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  for (std::size_t t = 0; t < t_count; ++t) {
    if (hit()) {
      g.assignment[t] = sc_.tasks[t].multi_uav ? draw(1, (1u << u_count) - 1u)
                                               : draw(0, static_cast<std::uint32_t>(u_count - 1));
    }
  }
  for (std::size_t t = 0; t < t_count; ++t) {
    if (hit() && t_count > 1) {
      const auto other = static_cast<std::size_t>(draw(0, static_cast<std::uint32_t>(t_count - 1)));
      std::swap(g.order[t], g.order[other]);
    }
  }
  for (auto& v : g.gcs) {
    if (hit()) v = draw(0, static_cast<std::uint32_t>(sc_.gcss.size() - 1));
  }
  for (auto& v : g.sensor) {
    if (hit()) v = draw(0, kNumSensors - 1);
  }
  for (auto& v : g.leg_profile) {
    if (hit()) v = draw(0, 1);
  }
  for (auto& v : g.return_profile) {
    if (hit()) v = draw(0, 1);
  }
  return encode(g);
}

}  // namespace kneeopt::mission

#include "kneeopt/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "kneeopt/dominance.hpp"
#include "kneeopt/metrics.hpp"

namespace kneeopt {

void AlgorithmConfig::validate() const {
  selection().validate();
  if (!(mut_probability >= 0.0 && mut_probability <= 1.0)) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
  if (stop_gen < 1) throw std::invalid_argument("stop_gen must be at least 1");
  if (max_gen < 1) throw std::invalid_argument("max_gen must be at least 1");
  if (variant == Variant::kFixedAngle) (void)cone_coefficient(theta);
  if (!(golden_tolerance > 0.0)) throw std::invalid_argument("golden tolerance must be positive");
}

std::string variant_id(Variant v, double theta) {
  switch (v) {
    case Variant::kPareto:
      return "pareto";
    case Variant::kSelfAdaptive:
      return "self_adaptive";
    case Variant::kFixedAngle: {
      const double rounded = std::round(theta);
      if (rounded == theta) return "fixed_" + std::to_string(static_cast<long>(rounded));
      return "fixed_" + std::to_string(theta);
    }
  }
  return "unknown";
}

std::string variant_id(const AlgorithmConfig& cfg) { return variant_id(cfg.variant, cfg.theta); }

std::vector<std::size_t> distinct_by_objectives(const Population& s, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> out;
  for (std::size_t i : members) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](std::size_t k) {
      return s[k].objectives() == s[i].objectives();
    });
    if (!seen) out.push_back(i);
  }
  return out;
}

namespace {

std::size_t evaluate_pending(const Problem& problem, Population& s, bool parallel) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].evaluated()) pending.push_back(i);
  }
  const auto n = static_cast<std::ptrdiff_t>(pending.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) if (parallel && n > 32)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    auto& ind = s[pending[static_cast<std::size_t>(k)]];
    try {
      ind.fitness = problem.evaluate(ind.genome);
    } catch (...) {
#pragma omp critical(kneeopt_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw std::runtime_error("evaluation of " + problem.name() + " failed: " + e.what());
    }
  }
  return pending.size();
}

std::vector<ObjectiveVector> sorted_objectives(const Population& s, const std::vector<std::size_t>& members) {
  std::vector<ObjectiveVector> out;
  out.reserve(members.size());
  for (std::size_t i : members) out.push_back(s[i].objectives());
  std::sort(out.begin(), out.end());
  return out;
}

double normalized_hypervolume(const Population& s, const std::vector<std::size_t>& members, const Bounds& b) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(members.size());
  for (std::size_t i : members) pts.push_back(normalize(s[i].objectives(), b));
  const ObjectiveVector ref(b.dimension(), 1.0);
  return hypervolume(pts, ref);
}

}  // namespace

RunRecord run(const Problem& problem, const AlgorithmConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::size_t m = problem.num_objectives();
  const auto upper = cfg.objective_upper_bounds.value_or(problem.objective_upper_bounds());
  const auto sel = cfg.selection();

  RunRecord rec;
  rec.problem = problem.name();
  rec.variant = variant_id(cfg);
  rec.seed = cfg.seed;

  Rng rng(cfg.seed);
  Population s;
  s.reserve(2 * cfg.lambda);
  for (std::size_t i = 0; i < cfg.lambda; ++i) s.push_back(Individual{problem.random_genome(rng), std::nullopt});

  Bounds bounds = bounds_init(m, upper);
  ConeParams cone = ConeParams::from_degrees(cfg.initial_theta());
  GoldenSectionState golden;
  std::vector<ObjectiveVector> previous_front;
  double hv_previous = 0.0;
  bool settled_previous = false;
  std::size_t unchanged = 0;
  std::size_t evaluations = 0;
  std::vector<std::size_t> front;

  for (std::size_t gen = 1; gen <= cfg.max_gen; ++gen) {
    evaluations += evaluate_pending(problem, s, cfg.parallel_evaluation);
    for (const auto& ind : s) bounds_update_inplace(bounds, ind.objectives());

    s = build_archive(std::move(s), sel, cone, bounds);
    front = distinct_by_objectives(s, knee_front_indices(s, cone, bounds));

    auto current = sorted_objectives(s, front);
    unchanged = current == previous_front ? unchanged + 1 : 0;
    previous_front = std::move(current);

    // Until a feasible solution exists the knee front only reflects
    // constraint counts, so it neither feeds the extremes nor starts the
    // angle search.
    const bool settled = std::all_of(front.begin(), front.end(), [&](std::size_t i) { return s[i].fitness->feasible(); });
    const double hv = normalized_hypervolume(s, front, bounds);
    if (settled) observe_front(golden, hv, front.size());
    const double score = online_hdist(hv, front.size(), golden);
    rec.generations.push_back(
        GenerationRecord{gen, cone.theta, golden.theta_a, golden.theta_b, front.size(), hv, score, evaluations});

    if (cfg.variant == Variant::kSelfAdaptive) {
      if (!golden.active) {
        if (settled && settled_previous) golden = golden_trigger(front.size(), hv, hv_previous, cfg.mu, golden);
      } else if (!golden.frozen) {
        golden = golden_step(score, golden);
        if (golden_converged(golden, cfg.golden_tolerance)) golden = golden_freeze(golden);
      }
      cone = ConeParams::from_degrees(golden.theta);
    }
    hv_previous = hv;
    settled_previous = settled;

    rec.generations_to_converge = gen;
    if (unchanged >= cfg.stop_gen) {
      rec.converged = true;
      break;
    }
    if (gen == cfg.max_gen) break;

    Population offspring = select_elites(s, cfg.mu);
    while (offspring.size() < cfg.lambda) {
      const auto& p1 = tournament_select(s, cfg.tournament_size, rng);
      const auto& p2 = tournament_select(s, cfg.tournament_size, rng);
      auto [c1, c2] = problem.crossover(p1.genome, p2.genome, rng);
      c1 = problem.mutate(c1, cfg.mut_probability, rng);
      c2 = problem.mutate(c2, cfg.mut_probability, rng);
      offspring.push_back(Individual{std::move(c1), std::nullopt});
      if (offspring.size() < cfg.lambda) offspring.push_back(Individual{std::move(c2), std::nullopt});
    }
    for (auto& ind : offspring) s.push_back(std::move(ind));
  }

  for (std::size_t i : front) rec.final_front.push_back(s[i]);
  rec.final_theta = rec.generations.empty() ? cone.theta : rec.generations.back().theta;
  rec.bounds = bounds;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

}  // namespace kneeopt

#include "intmo/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace intmo::hybrid {

std::string to_string(Harvest h) { return h == Harvest::trajectory ? "trajectory" : "results"; }

Harvest parse_harvest(const std::string& name) {
  if (name == "trajectory") return Harvest::trajectory;
  if (name == "results") return Harvest::results;
  throw std::invalid_argument("unknown harvest mode '" + name + "' (expected trajectory or results)");
}

void Config::validate() const {
  de.validate();
  if (ts_iterations < 1) throw std::invalid_argument("ts_iterations must be >= 1");
  if (alternations < 1) throw std::invalid_argument("alternations must be >= 1");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
}

Problem augment_with_violation(const Problem& problem) {
  if (problem.constraint_count() == 0) return problem;
  auto objectives = problem.objectives();
  auto constraints = problem.constraints();
  objectives.push_back({kViolationObjectiveName, Sense::minimize,
                        [constraints](std::span<const double> x) {
                          double g = 0.0;
                          for (const auto& c : constraints) g = std::max(g, c.fn(x));
                          return g;
                        }});
  return Problem(problem.name(), std::move(objectives), std::move(constraints), problem.lower(),
                 problem.upper());
}

std::optional<std::size_t> violation_objective_index(const Problem& problem) {
  const auto& objs = problem.objectives();
  if (problem.constraint_count() > 0 && objs.back().name == kViolationObjectiveName)
    return objs.size() - 1;
  return std::nullopt;
}

void assign_weights(CompromiseAnchors& anchors) {
  const std::size_t k = anchors.f_star.size();
  if (anchors.f_minus.size() != k) throw std::invalid_argument("assign_weights: anchor size mismatch");
  anchors.dropped.clear();
  std::vector<bool> keep(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double scale = std::max({1.0, std::abs(anchors.f_star[j]), std::abs(anchors.f_minus[j])});
    keep[j] = anchors.f_minus[j] - anchors.f_star[j] > 1e-12 * scale;
    if (!keep[j]) anchors.dropped.push_back(j);
  }
  const auto retained = static_cast<double>(k - anchors.dropped.size());
  anchors.weights.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    if (keep[j]) anchors.weights[j] = 1.0 / retained;
}

namespace {

de::Config subproblem_config(const Config& config) {
  auto cfg = config.de;
  cfg.variant = de::Variant::degl;
  return cfg;
}

const de::Individual& topsis_best(const de::Population& pop) { return pop[de::choose_best(pop)]; }

}  // namespace

CompromiseAnchors stage1_anchors(const Problem& augmented, const Config& config, Rng& rng) {
  const std::size_t k = augmented.objective_count();
  const auto violation = violation_objective_index(augmented);
  const auto cfg = subproblem_config(config);

  CompromiseAnchors a;
  a.f_star.resize(k);
  a.f_minus.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto low_pop = de::run(augmented, cfg, de::ScalarObjective::single_objective(j), rng);
    const double low = topsis_best(low_pop).eval.objectives_min[j];

    auto maximize = de::ScalarObjective::single_objective(j, Sense::maximize);
    if (violation && *violation == j)
      maximize = de::ScalarObjective(de::ScalarObjective::Kind::single_objective,
                                     [j](const Evaluation& e) { return -e.objectives_min[j]; },
                                     /*feasibility_blind=*/true);
    const auto high_pop = de::run(augmented, cfg, maximize, rng);
    const double high = topsis_best(high_pop).eval.objectives_min[j];

    a.f_star[j] = std::min(low, high);
    a.f_minus[j] = std::max(low, high);
  }
  assign_weights(a);
  return a;
}

CompromiseAnchors exact_stage1_anchors(const Problem& augmented, std::uint64_t limit) {
  const std::size_t k = augmented.objective_count();
  const auto violation = violation_objective_index(augmented);
  constexpr double inf = std::numeric_limits<double>::infinity();

  CompromiseAnchors a;
  a.f_star.assign(k, inf);
  a.f_minus.assign(k, -inf);
  bool any_feasible = false;
  for_each_lattice_point(
      augmented,
      [&](const IntVector& x) {
        const auto e = evaluate(augmented, std::span<const std::int64_t>(x));
        any_feasible = any_feasible || e.feasible();
        for (std::size_t j = 0; j < k; ++j) {
          if (!e.feasible() && !(violation && *violation == j)) continue;
          a.f_star[j] = std::min(a.f_star[j], e.objectives_min[j]);
          a.f_minus[j] = std::max(a.f_minus[j], e.objectives_min[j]);
        }
      },
      limit);
  if (!any_feasible)
    throw std::runtime_error("exact_stage1_anchors: problem '" + augmented.name() +
                             "' has no feasible lattice point");
  assign_weights(a);
  return a;
}

namespace {

template <typename Term>
double weighted_distance(const Evaluation& e, const CompromiseAnchors& anchors, Term term) {
  const std::size_t k = anchors.weights.size();
  if (k == 0 || e.objectives_min.size() != k)
    throw std::invalid_argument("distance: evaluation does not match anchors");
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double w = anchors.weights[j];
    if (w == 0.0) continue;
    const double range = anchors.f_minus[j] - anchors.f_star[j];
    if (range == 0.0)
      throw std::domain_error("distance: objective " + std::to_string(j) +
                              " is degenerate (PIS equals NIS) but still weighted");
    const double t = term(e.objectives_min[j], j) / range;
    sum += w * w * t * t;
  }
  return std::sqrt(sum);
}

}  // namespace

double d_pis(const Evaluation& e, const CompromiseAnchors& anchors) {
  return weighted_distance(e, anchors,
                           [&](double f, std::size_t j) { return f - anchors.f_star[j]; });
}

double d_nis(const Evaluation& e, const CompromiseAnchors& anchors) {
  return weighted_distance(e, anchors,
                           [&](double f, std::size_t j) { return anchors.f_minus[j] - f; });
}

de::ScalarObjective d_pis_objective(const CompromiseAnchors& anchors) {
  auto shared = std::make_shared<const CompromiseAnchors>(anchors);
  return de::ScalarObjective(de::ScalarObjective::Kind::d_pis_min,
                             [shared](const Evaluation& e) { return d_pis(e, *shared); });
}

de::ScalarObjective d_nis_objective(const CompromiseAnchors& anchors) {
  auto shared = std::make_shared<const CompromiseAnchors>(anchors);
  return de::ScalarObjective(de::ScalarObjective::Kind::d_nis_max,
                             [shared](const Evaluation& e) { return -d_nis(e, *shared); });
}

de::ScalarObjective maxmin_objective(const CompromiseAnchors& anchors) {
  auto shared = std::make_shared<const CompromiseAnchors>(anchors);
  return de::ScalarObjective(de::ScalarObjective::Kind::maxmin_alpha, [shared](const Evaluation& e) {
    return -maxmin_satisfaction(e, *shared);
  });
}

CompromiseAnchors stage2_anchors(const Problem& augmented, CompromiseAnchors anchors,
                                 const Config& config, Rng& rng) {
  const auto cfg = subproblem_config(config);

  const auto pis_pop = de::run(augmented, cfg, d_pis_objective(anchors), rng);
  const auto& xp = topsis_best(pis_pop);
  const auto nis_pop = de::run(augmented, cfg, d_nis_objective(anchors), rng);
  const auto& xn = topsis_best(nis_pop);

  anchors.x_p = xp.x;
  anchors.x_n = xn.x;
  anchors.d_pis_star = d_pis(xp.eval, anchors);
  anchors.d_nis_star = d_nis(xn.eval, anchors);
  anchors.d_pis_prime = d_pis(xn.eval, anchors);
  anchors.d_nis_prime = d_nis(xp.eval, anchors);
  anchors.mu1_degenerate = !(anchors.d_pis_prime > anchors.d_pis_star);
  anchors.mu2_degenerate = !(anchors.d_nis_star > anchors.d_nis_prime);
  return anchors;
}

double mu1(double d, const CompromiseAnchors& a) {
  if (a.mu1_degenerate || d < a.d_pis_star) return 1.0;
  if (d > a.d_pis_prime) return 0.0;
  return std::clamp(1.0 - (d - a.d_pis_star) / (a.d_pis_prime - a.d_pis_star), 0.0, 1.0);
}

double mu2(double d, const CompromiseAnchors& a) {
  if (a.mu2_degenerate || d > a.d_nis_star) return 1.0;
  if (d < a.d_nis_prime) return 0.0;
  return std::clamp(1.0 - (a.d_nis_star - d) / (a.d_nis_star - a.d_nis_prime), 0.0, 1.0);
}

double mu1(const Evaluation& e, const CompromiseAnchors& a) { return mu1(d_pis(e, a), a); }
double mu2(const Evaluation& e, const CompromiseAnchors& a) { return mu2(d_nis(e, a), a); }

double maxmin_satisfaction(const Evaluation& e, const CompromiseAnchors& a) {
  return std::min(mu1(e, a), mu2(e, a));
}

bool SolutionArchive::insert(const IntVector& x, const Evaluation& eval, std::size_t run) {
  if (!eval.feasible()) return false;
  auto [it, fresh] = entries_.try_emplace(x);
  auto& entry = it->second;
  if (fresh) {
    entry = {eval, 1, run, run};
  } else if (entry.last_run != run) {
    ++entry.count;
    entry.last_run = run;
  }
  return true;
}

void SolutionArchive::finalize() {
  std::vector<LatticePoint> points;
  points.reserve(entries_.size());
  for (const auto& [x, entry] : entries_) points.push_back({x, entry.eval});
  const auto front = pareto_filter(points);
  std::map<IntVector, Entry> kept;
  for (const auto& p : front) kept.emplace(p.x, entries_.at(p.x));
  entries_ = std::move(kept);
}

void SolutionArchive::merge(const SolutionArchive& other) {
  for (const auto& [x, theirs] : other.entries_) {
    auto [it, fresh] = entries_.try_emplace(x, theirs);
    if (fresh) continue;
    auto& mine = it->second;
    mine.count += theirs.count;
    mine.first_run = std::min(mine.first_run, theirs.first_run);
    mine.last_run = std::max(mine.last_run, theirs.last_run);
  }
}

namespace {

Evaluation restrict_to_original(const Evaluation& augmented_eval, std::size_t d) {
  Evaluation e;
  e.objectives_min.assign(augmented_eval.objectives_min.begin(),
                          augmented_eval.objectives_min.begin() + static_cast<std::ptrdiff_t>(d));
  e.violation = augmented_eval.violation;
  return e;
}

}  // namespace

void stage3_alternate(const Problem& original, const Problem& augmented,
                      const CompromiseAnchors& anchors, const Config& config, Rng& rng,
                      SolutionArchive& archive, std::size_t run_id) {
  config.validate();
  const std::size_t d = original.objective_count();
  const auto objective = maxmin_objective(anchors);

  const auto harvest = [&](const tabu::Candidate& c) {
    if (c.eval.feasible() && original.in_bounds(std::span<const std::int64_t>(c.x)))
      archive.insert(c.x, restrict_to_original(c.eval, d), run_id);
  };
  tabu::SearchTrace trace;
  if (config.harvest == Harvest::trajectory)
    trace.on_visit = [&](const tabu::Candidate& c, std::int64_t) { harvest(c); };

  std::optional<de::Population> pop;
  for (std::size_t alt = 0; alt < config.alternations; ++alt) {
    pop = de::run(augmented, config.de, objective, rng, std::move(pop));
    for (auto& member : *pop) {
      auto start = tabu::stochastic_round(member.x, rng);
      auto result = tabu::tabu_search(augmented, objective, std::move(start), config.ts_iterations,
                                      rng, config.tabu, &trace);
      harvest(result);
      if (deb_better(result.score, member.score)) {
        member.x.assign(result.x.begin(), result.x.end());
        member.eval = std::move(result.eval);
        member.score = result.score;
      }
    }
  }
  archive.finalize();
}

RunResult solve(const Problem& problem, const Config& config, Rng& rng, std::size_t run_id) {
  config.validate();
  RunResult out;
  const Problem augmented =
      config.include_violation_objective ? augment_with_violation(problem) : problem;

  auto anchors = config.oracle_anchors ? exact_stage1_anchors(augmented)
                                       : stage1_anchors(augmented, config, rng);
  for (auto j : anchors.dropped)
    out.notes.push_back("objective '" + augmented.objectives()[j].name +
                        "' is degenerate (PIS == NIS) and was dropped from the distances");

  anchors = stage2_anchors(augmented, std::move(anchors), config, rng);
  if (anchors.mu1_degenerate)
    out.notes.push_back("d_pis anchors coincide; membership mu1 fixed at 1");
  if (anchors.mu2_degenerate)
    out.notes.push_back("d_nis anchors coincide; membership mu2 fixed at 1");

  stage3_alternate(problem, augmented, anchors, config, rng, out.archive, run_id);
  out.anchors = std::move(anchors);
  return out;
}

}  // namespace intmo::hybrid

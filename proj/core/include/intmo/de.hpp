#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intmo/problem.hpp"
#include "intmo/random.hpp"

namespace intmo::de {

enum class Variant { rand1, best, degl };

std::string to_string(Variant v);
/// Parses "rand1", "best" or "degl"; throws std::invalid_argument otherwise.
Variant parse_variant(const std::string& name);

struct Config {
  std::size_t population_size = 40;
  std::size_t max_iterations = 100;
  double crossover_rate = 0.9;
  double scale_factor = 0.8;
  double alpha = 0.8;
  double beta = 0.8;
  std::size_t neighborhood_k = 2;
  Variant variant = Variant::degl;
  /// Use X_gbest + F (X_r1 - X_r2) instead of the printed DE_best donor.
  bool canonical_best = false;

  /// Throws std::invalid_argument on a structurally invalid configuration.
  void validate() const;
  /// Non-fatal advisories, e.g. a scale factor outside [0.4, 1].
  std::vector<std::string> warnings() const;
};

/// Maps an evaluation to the (fitness, violation) pair the engine minimizes
/// under Deb's rules.
class ScalarObjective {
 public:
  enum class Kind { single_objective, d_pis_min, d_nis_max, maxmin_alpha };
  using Fitness = std::function<double(const Evaluation&)>;

  ScalarObjective(Kind kind, Fitness fitness, bool feasibility_blind = false);

  /// Minimizes objectives_min[index] (or maximizes it for Sense::maximize).
  static ScalarObjective single_objective(std::size_t index, Sense sense = Sense::minimize);

  Kind kind() const { return kind_; }
  bool feasibility_blind() const { return feasibility_blind_; }

  /// A blind objective reports zero violation, so every point is treated as
  /// feasible and only fitness matters.
  Score score(const Evaluation& e) const;

 private:
  Kind kind_;
  Fitness fitness_;
  bool feasibility_blind_;
};

struct Individual {
  RealVector x;
  Evaluation eval;
  Score score;
};

using Population = std::vector<Individual>;

Individual make_individual(const Problem& problem, const ScalarObjective& objective, RealVector x);

Population init_population(const Problem& problem, const Config& config,
                           const ScalarObjective& objective, Rng& rng);

/// Samples `count` distinct indices from `pool`, all different from `exclude`.
std::vector<std::size_t> sample_distinct(std::span<const std::size_t> pool, std::size_t exclude,
                                         std::size_t count, Rng& rng);

/// Ring of indices {i-k, ..., i+k} modulo np.
std::vector<std::size_t> ring_neighborhood(std::size_t i, std::size_t k, std::size_t np);

RealVector differential(std::span<const double> base, std::span<const double> a,
                        std::span<const double> b, double f);

RealVector mutate_rand1(const Population& pop, std::size_t i, double f, Rng& rng);

/// X_r1 + F (X_r2 - X_gbest), or X_gbest + F (X_r1 - X_r2) when canonical.
RealVector mutate_best(const Population& pop, std::size_t i, double f, std::size_t gbest, Rng& rng,
                       bool canonical = false);

/// X_i + alpha (X_best - X_i) + beta (X_p - X_q).
RealVector degl_component(std::span<const double> xi, std::span<const double> best,
                          std::span<const double> xp, std::span<const double> xq, double alpha,
                          double beta);

/// r G + (1 - r) L.
RealVector degl_combine(std::span<const double> global, std::span<const double> local, double r);

struct DeglDonor {
  RealVector local;
  RealVector global;
  RealVector donor;
};

/// Local donor from the ring neighborhood of i (best member `local_best`),
/// global donor from the whole population (best member `gbest`).
DeglDonor mutate_degl(const Population& pop, std::size_t i, double alpha, double beta, double r,
                      std::size_t neighborhood_k, std::size_t local_best, std::size_t gbest,
                      Rng& rng);

/// iteration / max_iterations.
double weight_r(std::size_t iteration, std::size_t max_iterations);

/// Binomial crossover with one forced donor component.
RealVector crossover(std::span<const double> target, std::span<const double> donor, double cr,
                     Rng& rng);

RealVector clamp(RealVector x, const Problem& problem);

/// The trial when it is Deb-better than the target, else the target.
const Individual& select(const Individual& target, const Individual& trial);

/// Index from `indices` with the highest TOPSIS closeness over the
/// criteria (fitness, violation), both cost, equal weights.
std::size_t choose_best(const Population& pop, std::span<const std::size_t> indices);

/// choose_best over the whole population.
std::size_t choose_best(const Population& pop);

/// Index of the Deb-best member; ties keep the lowest index.
std::size_t deb_best(const Population& pop);

/// Instrumentation for tests and diagnostics.
struct RunTrace {
  std::size_t gbest_queries = 0;
  std::size_t local_best_queries = 0;
  std::size_t evaluations = 0;
  std::function<void(std::size_t generation, const Population&)> on_generation;
};

/// Runs config.max_iterations generations of mutation, crossover, clamping,
/// evaluation and Deb selection. Starts from `initial` when given (it is
/// re-scored under `objective`), otherwise from a fresh random population.
Population run(const Problem& problem, const Config& config, const ScalarObjective& objective,
               Rng& rng, std::optional<Population> initial = std::nullopt,
               RunTrace* trace = nullptr);

}  // namespace intmo::de

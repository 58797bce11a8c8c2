#include "intmo/de.hpp"

#include <algorithm>
#include <stdexcept>

#include "intmo/topsis.hpp"

namespace intmo::de {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::rand1:
      return "rand1";
    case Variant::best:
      return "best";
    case Variant::degl:
      return "degl";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "rand1") return Variant::rand1;
  if (name == "best") return Variant::best;
  if (name == "degl") return Variant::degl;
  throw std::invalid_argument("unknown DE variant '" + name + "' (expected rand1, best or degl)");
}

void Config::validate() const {
  if (population_size < 4)
    throw std::invalid_argument("DE population_size must be >= 4, got " +
                                std::to_string(population_size));
  if (max_iterations < 1) throw std::invalid_argument("DE max_iterations must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw std::invalid_argument("DE crossover_rate must lie in [0, 1]");
  if (neighborhood_k < 1) throw std::invalid_argument("DE neighborhood_k must be >= 1");
  if (2 * neighborhood_k + 1 > population_size)
    throw std::invalid_argument("DE neighborhood 2k+1 = " + std::to_string(2 * neighborhood_k + 1) +
                                " exceeds population_size " + std::to_string(population_size));
}

std::vector<std::string> Config::warnings() const {
  std::vector<std::string> out;
  if (scale_factor < 0.4 || scale_factor > 1.0)
    out.push_back("scale_factor " + std::to_string(scale_factor) +
                  " lies outside the usual range [0.4, 1]");
  return out;
}

ScalarObjective::ScalarObjective(Kind kind, Fitness fitness, bool feasibility_blind)
    : kind_(kind), fitness_(std::move(fitness)), feasibility_blind_(feasibility_blind) {
  if (!fitness_) throw std::invalid_argument("ScalarObjective: empty fitness function");
}

ScalarObjective ScalarObjective::single_objective(std::size_t index, Sense sense) {
  const double sign = sense == Sense::minimize ? 1.0 : -1.0;
  return ScalarObjective(Kind::single_objective, [index, sign](const Evaluation& e) {
    if (index >= e.objectives_min.size())
      throw std::out_of_range("single_objective: index " + std::to_string(index) + " out of range");
    return sign * e.objectives_min[index];
  });
}

Score ScalarObjective::score(const Evaluation& e) const {
  return {fitness_(e), feasibility_blind_ ? 0.0 : e.violation};
}

Individual make_individual(const Problem& problem, const ScalarObjective& objective, RealVector x) {
  Individual ind;
  ind.eval = evaluate(problem, x);
  ind.score = objective.score(ind.eval);
  ind.x = std::move(x);
  return ind;
}

Population init_population(const Problem& problem, const Config& config,
                           const ScalarObjective& objective, Rng& rng) {
  const std::size_t n = problem.dimension();
  Population pop;
  pop.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    RealVector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto lo = static_cast<double>(problem.lower()[j]);
      const auto hi = static_cast<double>(problem.upper()[j]);
      x[j] = lo + rng.uniform01() * (hi - lo);
    }
    pop.push_back(make_individual(problem, objective, std::move(x)));
  }
  return pop;
}

std::vector<std::size_t> sample_distinct(std::span<const std::size_t> pool, std::size_t exclude,
                                         std::size_t count, Rng& rng) {
  std::vector<std::size_t> available;
  for (auto p : pool)
    if (p != exclude && std::find(available.begin(), available.end(), p) == available.end())
      available.push_back(p);
  if (available.size() < count)
    throw std::invalid_argument("sample_distinct: pool too small for " + std::to_string(count) +
                                " distinct indices");

  std::vector<std::size_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto candidate = pool[rng.index(pool.size())];
    if (candidate == exclude) continue;
    if (std::find(out.begin(), out.end(), candidate) != out.end()) continue;
    out.push_back(candidate);
  }
  return out;
}

std::vector<std::size_t> ring_neighborhood(std::size_t i, std::size_t k, std::size_t np) {
  std::vector<std::size_t> ring;
  ring.reserve(2 * k + 1);
  for (std::size_t off = 0; off <= 2 * k; ++off) ring.push_back((i + np * (k + 1) + off - k) % np);
  return ring;
}

RealVector differential(std::span<const double> base, std::span<const double> a,
                        std::span<const double> b, double f) {
  RealVector v(base.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = base[j] + f * (a[j] - b[j]);
  return v;
}

namespace {

std::vector<std::size_t> all_indices(std::size_t np) {
  std::vector<std::size_t> idx(np);
  for (std::size_t i = 0; i < np; ++i) idx[i] = i;
  return idx;
}

}  // namespace

RealVector mutate_rand1(const Population& pop, std::size_t i, double f, Rng& rng) {
  const auto idx = all_indices(pop.size());
  const auto r = sample_distinct(idx, i, 3, rng);
  return differential(pop[r[0]].x, pop[r[1]].x, pop[r[2]].x, f);
}

RealVector mutate_best(const Population& pop, std::size_t i, double f, std::size_t gbest, Rng& rng,
                       bool canonical) {
  const auto idx = all_indices(pop.size());
  const auto r = sample_distinct(idx, i, 2, rng);
  if (canonical) return differential(pop[gbest].x, pop[r[0]].x, pop[r[1]].x, f);
  return differential(pop[r[0]].x, pop[r[1]].x, pop[gbest].x, f);
}

RealVector degl_component(std::span<const double> xi, std::span<const double> best,
                          std::span<const double> xp, std::span<const double> xq, double alpha,
                          double beta) {
  RealVector v(xi.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = xi[j] + alpha * (best[j] - xi[j]) + beta * (xp[j] - xq[j]);
  return v;
}

RealVector degl_combine(std::span<const double> global, std::span<const double> local, double r) {
  RealVector v(global.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = r * global[j] + (1.0 - r) * local[j];
  return v;
}

DeglDonor mutate_degl(const Population& pop, std::size_t i, double alpha, double beta, double r,
                      std::size_t neighborhood_k, std::size_t local_best, std::size_t gbest,
                      Rng& rng) {
  const auto ring = ring_neighborhood(i, neighborhood_k, pop.size());
  const auto pq = sample_distinct(ring, i, 2, rng);
  const auto idx = all_indices(pop.size());
  const auto gq = sample_distinct(idx, i, 2, rng);

  DeglDonor out;
  out.local = degl_component(pop[i].x, pop[local_best].x, pop[pq[0]].x, pop[pq[1]].x, alpha, beta);
  out.global = degl_component(pop[i].x, pop[gbest].x, pop[gq[0]].x, pop[gq[1]].x, alpha, beta);
  out.donor = degl_combine(out.global, out.local, r);
  return out;
}

double weight_r(std::size_t iteration, std::size_t max_iterations) {
  if (max_iterations == 0 || iteration < 1 || iteration > max_iterations)
    throw std::invalid_argument("weight_r: iteration must lie in [1, max_iterations]");
  return static_cast<double>(iteration) / static_cast<double>(max_iterations);
}

RealVector crossover(std::span<const double> target, std::span<const double> donor, double cr,
                     Rng& rng) {
  if (target.size() != donor.size())
    throw std::invalid_argument("crossover: target and donor differ in length");
  const std::size_t n = target.size();
  const std::size_t j_rand = rng.index(n);
  RealVector u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = (rng.uniform01() <= cr || j == j_rand) ? donor[j] : target[j];
  return u;
}

RealVector clamp(RealVector x, const Problem& problem) {
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(x[j], static_cast<double>(problem.lower()[j]),
                      static_cast<double>(problem.upper()[j]));
  return x;
}

const Individual& select(const Individual& target, const Individual& trial) {
  return deb_better(trial.score, target.score) ? trial : target;
}

std::size_t choose_best(const Population& pop, std::span<const std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("choose_best: empty candidate set");
  if (indices.size() == 1) return indices.front();
  topsis::Matrix m(indices.size(), 2);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto& s = pop.at(indices[r]).score;
    m(r, 0) = s.fitness;
    m(r, 1) = s.violation;
  }
  const auto ranking = topsis::rank(topsis::DecisionMatrix(std::move(m)));
  return indices[topsis::best_alternative(ranking)];
}

std::size_t choose_best(const Population& pop) {
  const auto idx = all_indices(pop.size());
  return choose_best(pop, idx);
}

std::size_t deb_best(const Population& pop) {
  if (pop.empty()) throw std::invalid_argument("deb_best: empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (deb_better(pop[i].score, pop[best].score)) best = i;
  return best;
}

Population run(const Problem& problem, const Config& config, const ScalarObjective& objective,
               Rng& rng, std::optional<Population> initial, RunTrace* trace) {
  config.validate();
  Population pop;
  if (initial) {
    pop = std::move(*initial);
    if (pop.size() != config.population_size)
      throw std::invalid_argument("DE run: initial population has " + std::to_string(pop.size()) +
                                  " members, config expects " +
                                  std::to_string(config.population_size));
    for (auto& ind : pop) {
      if (ind.x.size() != problem.dimension())
        throw std::invalid_argument("DE run: initial member has wrong dimension");
      ind.eval = evaluate(problem, ind.x);
      ind.score = objective.score(ind.eval);
    }
  } else {
    pop = init_population(problem, config, objective, rng);
  }
  if (trace) trace->evaluations += pop.size();

  const std::size_t np = pop.size();
  for (std::size_t gen = 1; gen <= config.max_iterations; ++gen) {
    std::size_t gbest = 0;
    if (config.variant != Variant::rand1) {
      gbest = choose_best(pop);
      if (trace) ++trace->gbest_queries;
    }
    const double r = weight_r(gen, config.max_iterations);

    for (std::size_t i = 0; i < np; ++i) {
      RealVector donor;
      switch (config.variant) {
        case Variant::rand1:
          donor = mutate_rand1(pop, i, config.scale_factor, rng);
          break;
        case Variant::best:
          donor = mutate_best(pop, i, config.scale_factor, gbest, rng, config.canonical_best);
          break;
        case Variant::degl: {
          const auto ring = ring_neighborhood(i, config.neighborhood_k, np);
          const auto local_best = choose_best(pop, ring);
          if (trace) ++trace->local_best_queries;
          donor = mutate_degl(pop, i, config.alpha, config.beta, r, config.neighborhood_k,
                              local_best, gbest, rng)
                      .donor;
          break;
        }
      }
      auto trial = make_individual(
          problem, objective, clamp(crossover(pop[i].x, donor, config.crossover_rate, rng), problem));
      if (trace) ++trace->evaluations;
      if (deb_better(trial.score, pop[i].score)) pop[i] = std::move(trial);
    }
    if (trace && trace->on_generation) trace->on_generation(gen, pop);
  }
  return pop;
}

}  // namespace intmo::de

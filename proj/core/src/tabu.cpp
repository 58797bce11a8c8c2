#include "intmo/tabu.hpp"

#include <cmath>
#include <stdexcept>

namespace intmo::tabu {

Candidate make_candidate(const Problem& problem, const de::ScalarObjective& objective, IntVector x) {
  Candidate c;
  c.eval = evaluate(problem, std::span<const std::int64_t>(x));
  c.score = objective.score(c.eval);
  c.x = std::move(x);
  return c;
}

IntVector stochastic_round(std::span<const double> x, Rng& rng) {
  IntVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double lo = std::floor(x[j]);
    const bool up = rng.uniform01() <= x[j] - lo;
    out[j] = static_cast<std::int64_t>(up ? std::ceil(x[j]) : lo);
  }
  return out;
}

MoveResult tabu_move(const Problem& problem, const de::ScalarObjective& objective,
                     const Candidate& current, const Candidate& best, std::int64_t k, State& state,
                     Rng& rng, const Options& options) {
  const std::size_t n = problem.dimension();
  const auto span_n = static_cast<std::int64_t>(n);
  if (state.last_update.size() != n) throw std::invalid_argument("tabu_move: state dimension mismatch");

  if (options.literal_diversification) {
    bool all_expired = true;
    for (auto t : state.last_update) all_expired = all_expired && (k - t > span_n);
    if (all_expired) {
      const std::size_t c = rng.index(n);
      IntVector x = current.x;
      x[c] = rng.uniform_int(problem.lower()[c], problem.upper()[c]);
      state.last_update[c] = k;
      return {make_candidate(problem, objective, std::move(x)), c, true};
    }
  }

  MoveResult result{current, std::nullopt, false};
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t tenure = rng.uniform_int(1, span_n);
    for (const std::int64_t delta : {-1, 1}) {
      const std::int64_t value = current.x[j] + delta;
      if (value < problem.lower()[j] || value > problem.upper()[j]) continue;
      IntVector s = current.x;
      s[j] = value;
      auto neighbour = make_candidate(problem, objective, std::move(s));
      if (!deb_better(neighbour.score, result.point.score)) continue;
      const bool non_tabu = k - state.last_update[j] > tenure;
      if (non_tabu || deb_better(neighbour.score, best.score)) {
        result.point = std::move(neighbour);
        result.stamped = j;
      }
    }
  }
  if (result.stamped) state.last_update[*result.stamped] = k;
  return result;
}

Candidate tabu_search(const Problem& problem, const de::ScalarObjective& objective, IntVector x0,
                      std::size_t iterations, Rng& rng, const Options& options,
                      const SearchTrace* trace) {
  if (!problem.in_bounds(std::span<const std::int64_t>(x0)))
    throw std::invalid_argument("tabu_search: start point outside the box");
  Candidate current = make_candidate(problem, objective, std::move(x0));
  Candidate best = current;
  State state(problem.dimension());
  if (trace && trace->on_visit) trace->on_visit(current, 0);

  for (std::size_t it = 1; it <= iterations; ++it) {
    const auto k = static_cast<std::int64_t>(it);
    auto move = tabu_move(problem, objective, current, best, k, state, rng, options);
    const bool changed = move.point.x != current.x;
    if (trace && trace->on_move) trace->on_move(move, state, k);
    if (changed) {
      current = std::move(move.point);
      if (trace && trace->on_visit) trace->on_visit(current, k);
    }
    if (deb_better(current.score, best.score)) best = current;
  }
  return best;
}

}  // namespace intmo::tabu

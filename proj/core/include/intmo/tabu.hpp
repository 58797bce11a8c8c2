#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "intmo/de.hpp"
#include "intmo/problem.hpp"
#include "intmo/random.hpp"

namespace intmo::tabu {

struct Options {
  /// Random single-coordinate reset whenever every variable has been
  /// untouched for more than n iterations (fires on the first iteration).
  bool literal_diversification = true;
};

/// Short-term memory: last_update[j] is the iteration at which variable j
/// last changed. Starts at -n for every variable.
struct State {
  explicit State(std::size_t n) : last_update(n, -static_cast<std::int64_t>(n)) {}
  std::vector<std::int64_t> last_update;
};

/// An integer point with its evaluation and score under the active objective.
struct Candidate {
  IntVector x;
  Evaluation eval;
  Score score;
};

Candidate make_candidate(const Problem& problem, const de::ScalarObjective& objective, IntVector x);

/// Rounds each component up with probability equal to its fractional part.
IntVector stochastic_round(std::span<const double> x, Rng& rng);

struct MoveResult {
  Candidate point;
  /// Coordinate stamped with the current iteration, if any.
  std::optional<std::size_t> stamped;
  bool diversified = false;
};

/// One tabu move from `current` at iteration k. Neighbours x +/- e_j are
/// scanned coordinate-ascending, -1 before +1; a neighbour is taken when it
/// beats the working best and is either non-tabu (k - t_j > d, d ~ U{1..n})
/// or beats `best` (aspiration). No admissible move leaves the point and the
/// memory unchanged.
MoveResult tabu_move(const Problem& problem, const de::ScalarObjective& objective,
                     const Candidate& current, const Candidate& best, std::int64_t k, State& state,
                     Rng& rng, const Options& options = {});

struct SearchTrace {
  /// Called with the starting point and after every move that changes the
  /// current point.
  std::function<void(const Candidate& current, std::int64_t k)> on_visit;
  /// Called after every move with the state as left by that move.
  std::function<void(const MoveResult& move, const State& state, std::int64_t k)> on_move;
};

/// Runs `iterations` tabu moves from x0 and returns the best point seen
/// under Deb's rules.
Candidate tabu_search(const Problem& problem, const de::ScalarObjective& objective, IntVector x0,
                      std::size_t iterations, Rng& rng, const Options& options = {},
                      const SearchTrace* trace = nullptr);

}  // namespace intmo::tabu

#include "intmo/tabu.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "intmo/benchmarks.hpp"

namespace intmo::tabu {
namespace {

using de::ScalarObjective;
using harness::problem1;
using harness::problem3;

TEST(StochasticRound, IntegralValuesAreExact) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto r = stochastic_round(std::vector<double>{3.0, -2.0, 0.0}, rng);
    EXPECT_EQ(r, (IntVector{3, -2, 0}));
  }
}

TEST(StochasticRound, UnbiasedWithinThreeSigma) {
  Rng rng(2024);
  constexpr int kDraws = 100'000;
  const double x = 2.25;
  double sum = 0;
  int ups = 0;
  for (int t = 0; t < kDraws; ++t) {
    const auto r = stochastic_round(std::vector<double>{x}, rng)[0];
    ASSERT_TRUE(r == 2 || r == 3);
    sum += static_cast<double>(r);
    ups += r == 3;
  }
  const double mean = sum / kDraws;
  const double sigma = std::sqrt(0.25 * 0.75 / kDraws);
  EXPECT_NEAR(mean, x, 3 * sigma);
  EXPECT_GE(mean, 2.24);
  EXPECT_LE(mean, 2.26);
  EXPECT_NEAR(static_cast<double>(ups) / kDraws, 0.25, 3 * sigma);
}

TEST(StochasticRound, NegativeFractions) {
  Rng rng(9);
  double sum = 0;
  for (int t = 0; t < 100'000; ++t) sum += static_cast<double>(stochastic_round(std::vector<double>{-1.7}, rng)[0]);
  EXPECT_NEAR(sum / 100'000, -1.7, 3 * std::sqrt(0.3 * 0.7 / 100'000));
}

TEST(TabuMove, FreshStateFiresDiversification) {
  const auto p = problem1();
  const auto obj = ScalarObjective::single_objective(0);
  Rng rng(5);
  State state(2);
  EXPECT_EQ(state.last_update, (std::vector<std::int64_t>{-2, -2}));
  const auto start = make_candidate(p, obj, {4, 4});
  const auto move = tabu_move(p, obj, start, start, 1, state, rng);
  EXPECT_TRUE(move.diversified);
  ASSERT_TRUE(move.stamped.has_value());
  EXPECT_EQ(state.last_update[*move.stamped], 1);
  // only the reset coordinate may differ
  const std::size_t other = 1 - *move.stamped;
  EXPECT_EQ(move.point.x[other], 4);
  EXPECT_TRUE(p.in_bounds(std::span<const std::int64_t>(move.point.x)));
}

TEST(TabuMove, StuckAtLocalOptimumLeavesPointAndMemory) {
  // min (x1-3)^2 + (x2-3)^2 on [0,6]^2: (3,3) is the strict optimum
  Problem p("bowl",
            {{"f", Sense::minimize,
              [](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3) + (x[1] - 3) * (x[1] - 3); }}},
            {}, {0, 0}, {6, 6});
  const auto obj = ScalarObjective::single_objective(0);
  Rng rng(3);
  State state(2);
  state.last_update = {5, 5};
  const auto at = make_candidate(p, obj, {3, 3});
  const auto move = tabu_move(p, obj, at, at, 6, state, rng);
  EXPECT_EQ(move.point.x, (IntVector{3, 3}));
  EXPECT_FALSE(move.stamped.has_value());
  EXPECT_FALSE(move.diversified);
  EXPECT_EQ(state.last_update, (std::vector<std::int64_t>{5, 5}));
}

TEST(TabuMove, ProblemThreeStepsToNineFive) {
  const auto p = problem3();
  const auto obj = ScalarObjective::single_objective(0);
  Options opts;
  opts.literal_diversification = false;
  Rng rng(1);
  State state(2);
  const auto start = make_candidate(p, obj, {8, 5});
  const auto move = tabu_move(p, obj, start, start, 10, state, rng, opts);
  EXPECT_EQ(move.point.x, (IntVector{9, 5}));
  EXPECT_TRUE(move.point.eval.feasible());
  EXPECT_EQ(move.stamped, std::optional<std::size_t>(0));
  EXPECT_EQ(state.last_update[0], 10);
}

TEST(TabuMove, AspirationOverridesTenure) {
  const auto p = problem3();
  const auto obj = ScalarObjective::single_objective(0);
  Options opts;
  opts.literal_diversification = false;
  Rng rng(1);
  State state(2);
  state.last_update = {10, -2};
  const auto start = make_candidate(p, obj, {8, 5});
  // coordinate 0 is tabu at k = 10, but (9,5) beats the best seen
  const auto move = tabu_move(p, obj, start, start, 10, state, rng, opts);
  EXPECT_EQ(move.point.x, (IntVector{9, 5}));
  // a worse recorded best would not help: (9,5) must beat x_star
  State again(2);
  again.last_update = {10, 10};
  const auto better_best = make_candidate(p, obj, {11, 1});
  const auto blocked = tabu_move(p, obj, start, better_best, 10, again, rng, opts);
  EXPECT_EQ(blocked.point.x, (IntVector{8, 5}));
}

TEST(TabuSearch, ZeroIterationsReturnsStart) {
  const auto p = problem1();
  const auto obj = ScalarObjective::single_objective(0);
  Rng rng(1);
  const auto out = tabu_search(p, obj, {3, 2}, 0, rng);
  EXPECT_EQ(out.x, (IntVector{3, 2}));
  EXPECT_THROW(tabu_search(p, obj, {0, 2}, 1, rng), std::invalid_argument);
}

TEST(TabuSearch, FindsLatticeMaximumOfFirstObjective) {
  const auto p = problem1();
  const auto obj = ScalarObjective::single_objective(0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto out = tabu_search(p, obj, {1, 1}, 1000, rng);
    EXPECT_TRUE(out.eval.feasible());
    EXPECT_EQ(-out.eval.objectives_min[0], 29.0);
    EXPECT_EQ(out.x, (IntVector{2, 5}));
  }
}

TEST(TabuSearch, DeterministicPerSeed) {
  const auto p = problem3();
  const auto obj = ScalarObjective::single_objective(1);
  Rng a(42);
  Rng b(42);
  EXPECT_EQ(tabu_search(p, obj, {0, 0}, 300, a).x, tabu_search(p, obj, {0, 0}, 300, b).x);
}

TEST(TabuProperty, BestMonotoneVisitsInBoxAndTenureStamped) {
  for (const auto& p : {problem1(), harness::problem2(), problem3()}) {
    for (std::size_t j = 0; j < p.objective_count(); ++j) {
      const auto obj = ScalarObjective::single_objective(j, j % 2 ? Sense::maximize : Sense::minimize);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        std::optional<Score> best;
        std::size_t stamped_moves = 0;
        SearchTrace trace;
        trace.on_visit = [&](const Candidate& c, std::int64_t) {
          EXPECT_TRUE(p.in_bounds(std::span<const std::int64_t>(c.x)));
          if (!best || deb_better(c.score, *best)) best = c.score;
        };
        trace.on_move = [&](const MoveResult& m, const State& s, std::int64_t k) {
          if (m.stamped) {
            ++stamped_moves;
            EXPECT_EQ(s.last_update[*m.stamped], k);
          }
        };
        IntVector x0;
        for (std::size_t d = 0; d < p.dimension(); ++d)
          x0.push_back(rng.uniform_int(p.lower()[d], p.upper()[d]));
        const auto out = tabu_search(p, obj, x0, 200, rng, {}, &trace);
        EXPECT_GT(stamped_moves, 0u);
        // the returned point is the Deb-best of everything visited
        ASSERT_TRUE(best.has_value());
        EXPECT_FALSE(deb_better(*best, out.score));
        EXPECT_FALSE(deb_better(out.score, *best));
      }
    }
  }
}

TEST(TabuProperty, ReturnedBestNeverWorsensWithMoreIterations) {
  const auto p = problem1();
  const auto obj = ScalarObjective::single_objective(2);
  Rng rng(8);
  std::optional<Score> previous;
  SearchTrace trace;
  Candidate running;
  bool have = false;
  trace.on_visit = [&](const Candidate& c, std::int64_t) {
    if (!have || deb_better(c.score, running.score)) running = c, have = true;
    if (previous) EXPECT_FALSE(deb_better(*previous, running.score));
    previous = running.score;
  };
  tabu_search(p, obj, {7, 5}, 500, rng, {}, &trace);
}

TEST(TabuProperty, OneDimensionalUnimodalCompleteness) {
  Options opts;
  opts.literal_diversification = false;
  for (std::int64_t peak = 0; peak <= 20; peak += 5) {
    Problem p("unimodal",
              {{"f", Sense::minimize,
                [peak](std::span<const double> x) { return std::abs(x[0] - static_cast<double>(peak)); }}},
              {}, {0}, {20});
    const auto obj = ScalarObjective::single_objective(0);
    for (std::int64_t start = 0; start <= 20; start += 4) {
      Rng rng(static_cast<std::uint64_t>(peak * 100 + start));
      const auto out = tabu_search(p, obj, {start}, 20, rng, opts);
      EXPECT_EQ(out.x, (IntVector{peak})) << "start " << start;
    }
  }
}

}  // namespace
}  // namespace intmo::tabu

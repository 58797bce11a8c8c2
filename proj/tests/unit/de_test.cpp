#include "intmo/de.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "intmo/benchmarks.hpp"
#include "intmo/hybrid.hpp"
#include "oracle.hpp"

namespace intmo::de {
namespace {

using harness::problem1;
using harness::problem2;
using harness::problem3;

Problem square(std::int64_t lo, std::int64_t hi) {
  return Problem("square",
                 {{"sum", Sense::minimize, [](std::span<const double> x) { return x[0] + x[1]; }}}, {},
                 {lo, lo}, {hi, hi});
}

Population from_points(const Problem& p, const std::vector<RealVector>& xs) {
  const auto obj = ScalarObjective::single_objective(0);
  Population pop;
  for (const auto& x : xs) pop.push_back(make_individual(p, obj, x));
  return pop;
}

Individual scored(double fitness, double violation) {
  Individual ind;
  ind.score = {fitness, violation};
  return ind;
}

TEST(Variant, RoundTrip) {
  for (auto v : {Variant::rand1, Variant::best, Variant::degl}) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("rand2"), std::invalid_argument);
}

TEST(ConfigCheck, ValidationAndWarnings) {
  Config c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.warnings().empty());
  c.scale_factor = 1.5;
  EXPECT_EQ(c.warnings().size(), 1u);
  c = Config{};
  c.population_size = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = Config{};
  c.population_size = 4;
  c.neighborhood_k = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = Config{};
  c.crossover_rate = 1.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(InitPopulation, DegenerateBoxAndContainment) {
  const auto obj = ScalarObjective::single_objective(0);
  Config c;
  Rng rng(3);
  for (const auto& ind : init_population(square(2, 2), c, obj, rng))
    EXPECT_EQ(ind.x, (RealVector{2, 2}));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r(seed);
    const auto pop = init_population(problem1(), c, obj, r);
    ASSERT_EQ(pop.size(), 40u);
    for (const auto& ind : pop) EXPECT_TRUE(problem1().in_bounds(std::span<const double>(ind.x)));
  }
}

TEST(InitPopulation, FollowsLowerPlusUniformTimesWidth) {
  const auto obj = ScalarObjective::single_objective(0);
  Config c;
  c.population_size = 5;
  Rng a(17);
  Rng b(17);
  const auto pop = init_population(square(0, 1), c, obj, a);
  for (const auto& ind : pop)
    for (double v : ind.x) EXPECT_EQ(v, 0.0 + b.uniform01() * 1.0);
}

TEST(Mutation, DifferenceFormulas) {
  EXPECT_EQ(differential(RealVector{1, 1}, RealVector{3, 3}, RealVector{1, 1}, 0.8),
            (RealVector{1 + 0.8 * 2, 1 + 0.8 * 2}));
  EXPECT_NEAR(differential(RealVector{1, 1}, RealVector{3, 3}, RealVector{1, 1}, 0.8)[0], 2.6, 1e-15);
  EXPECT_EQ(differential(RealVector{4, 5}, RealVector{3, 3}, RealVector{3, 3}, 0.8), (RealVector{4, 5}));
  EXPECT_EQ(differential(RealVector{4, 5}, RealVector{9, 1}, RealVector{3, 3}, 0.0), (RealVector{4, 5}));
}

TEST(Mutation, Rand1UsesThreeDistinctMembers) {
  const auto p = square(0, 100);
  // every member distinct, so the donor identifies which members were drawn
  const auto pop = from_points(p, {{0, 0}, {1, 1}, {3, 3}, {10, 10}, {30, 30}});
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto v = mutate_rand1(pop, 0, 0.0, rng);
    EXPECT_NE(v, (RealVector{0, 0}));
  }
  // X_r2 == X_r3 for every pair -> V = X_r1
  const auto same = from_points(p, {{2, 2}, {2, 2}, {2, 2}, {2, 2}});
  EXPECT_EQ(mutate_rand1(same, 1, 0.8, rng), (RealVector{2, 2}));
}

TEST(Mutation, BestPrintedForm) {
  const auto p = square(-10, 10);
  // population of 4: target 0; candidates 1..3; gbest = 3
  const auto pop = from_points(p, {{5, 5}, {0, 0}, {1, 1}, {1, 1}});
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const auto v = mutate_best(pop, 0, 0.8, 3, rng);
    // r1, r2 drawn from {1,2,3}; whenever r2 is a copy of gbest V = X_r1
    const bool ok = v == RealVector{0, 0} || v == RealVector{1, 1} ||
                    v == differential(RealVector{1, 1}, RealVector{0, 0}, RealVector{1, 1}, 0.8) ||
                    v == differential(RealVector{0, 0}, RealVector{1, 1}, RealVector{1, 1}, 0.8);
    EXPECT_TRUE(ok);
  }
  EXPECT_EQ(differential(RealVector{0, 0}, RealVector{1, 1}, RealVector{1, 1}, 0.8), (RealVector{0, 0}));
  for (int t = 0; t < 20; ++t) {
    const auto v = mutate_best(pop, 0, 0.0, 3, rng);
    EXPECT_TRUE((v == RealVector{0, 0} || v == RealVector{1, 1}));
  }
}

TEST(Mutation, CanonicalBestStartsFromGbest) {
  const auto p = square(-10, 10);
  const auto pop = from_points(p, {{5, 5}, {0, 0}, {1, 1}, {7, 7}});
  Rng rng(4);
  EXPECT_EQ(mutate_best(pop, 0, 0.0, 3, rng, true), (RealVector{7, 7}));
}

TEST(Degl, EndpointsAreExact) {
  const auto p = square(-100, 100);
  Rng init(8);
  Config c;
  c.population_size = 10;
  const auto pop = init_population(p, c, ScalarObjective::single_objective(0), init);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng a(seed);
    const auto d0 = mutate_degl(pop, 3, 0.8, 0.8, 0.0, 2, 4, 7, a);
    EXPECT_EQ(d0.donor, d0.local);
    Rng b(seed);
    const auto d1 = mutate_degl(pop, 3, 0.8, 0.8, 1.0, 2, 4, 7, b);
    EXPECT_EQ(d1.donor, d1.global);
  }
  EXPECT_EQ(degl_combine(RealVector{0.1, 7.3}, RealVector{-3.3, 1e-9}, 0.0), (RealVector{-3.3, 1e-9}));
  EXPECT_EQ(degl_combine(RealVector{0.1, 7.3}, RealVector{-3.3, 1e-9}, 1.0), (RealVector{0.1, 7.3}));
}

TEST(Degl, ComponentFormula) {
  const auto v = degl_component(RealVector{1, 2}, RealVector{3, 2}, RealVector{5, 0}, RealVector{4, 1},
                                0.5, 2.0);
  EXPECT_EQ(v, (RealVector{1 + 0.5 * 2 + 2.0 * 1, 2 + 0 + 2.0 * -1}));
}

TEST(Degl, IdenticalPopulationGivesTarget) {
  const auto p = square(-5, 5);
  const auto pop = from_points(p, std::vector<RealVector>(6, RealVector{1.5, -2}));
  Rng rng(1);
  for (double r : {0.0, 0.3, 1.0}) {
    const auto d = mutate_degl(pop, 2, 0.8, 0.8, r, 2, 1, 0, rng);
    EXPECT_EQ(d.local, (RealVector{1.5, -2}));
    EXPECT_EQ(d.global, (RealVector{1.5, -2}));
    // r G + (1 - r) G equals G up to rounding of the two products
    EXPECT_DOUBLE_EQ(d.donor[0], 1.5);
    EXPECT_DOUBLE_EQ(d.donor[1], -2.0);
  }
}

TEST(Ring, WrapsAround) {
  EXPECT_EQ(ring_neighborhood(0, 2, 10), (std::vector<std::size_t>{8, 9, 0, 1, 2}));
  EXPECT_EQ(ring_neighborhood(9, 1, 10), (std::vector<std::size_t>{8, 9, 0}));
  EXPECT_EQ(ring_neighborhood(5, 2, 10), (std::vector<std::size_t>{3, 4, 5, 6, 7}));
}

TEST(SampleDistinct, ExcludesAndIsDistinct) {
  const std::vector<std::size_t> pool{0, 1, 2, 3, 4};
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    auto s = sample_distinct(pool, 2, 3, rng);
    EXPECT_EQ(std::count(s.begin(), s.end(), 2u), 0);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(std::unique(s.begin(), s.end()), s.end());
  }
  EXPECT_THROW(sample_distinct(pool, 2, 5, rng), std::invalid_argument);
}

TEST(WeightR, Ratio) {
  EXPECT_EQ(weight_r(100, 100), 1.0);
  EXPECT_EQ(weight_r(1, 100), 0.01);
  EXPECT_EQ(weight_r(50, 100), 0.5);
  EXPECT_THROW(weight_r(0, 100), std::invalid_argument);
  EXPECT_THROW(weight_r(101, 100), std::invalid_argument);
}

TEST(Crossover, Extremes) {
  const RealVector x{1, 2, 3, 4, 5};
  const RealVector v{10, 20, 30, 40, 50};
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    EXPECT_EQ(crossover(x, v, 1.0, rng), v);
    EXPECT_EQ(crossover(x, x, 0.37, rng), x);
    const auto u = crossover(x, v, 0.0, rng);
    int differing = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (u[j] != x[j]) {
        ++differing;
        EXPECT_EQ(u[j], v[j]);
      }
    }
    EXPECT_EQ(differing, 1);
  }
}

TEST(Clamp, ProjectsOntoBox) {
  EXPECT_EQ(clamp({9, 3}, problem1()), (RealVector{7, 3}));
  EXPECT_EQ(clamp({2.5, 4.5}, problem1()), (RealVector{2.5, 4.5}));
  EXPECT_EQ(clamp({-2, 8}, square(0, 5)), (RealVector{0, 5}));
}

TEST(Select, DebRules) {
  const auto infeasible_target = scored(0, 2);
  const auto feasible_trial = scored(10, 0);
  EXPECT_EQ(&select(infeasible_target, feasible_trial), &feasible_trial);
  const auto a = scored(1, 0);
  const auto b = scored(1, 0);
  EXPECT_EQ(&select(a, b), &a);
  const auto t2 = scored(0, 2);
  const auto u1 = scored(5, 1);
  EXPECT_EQ(&select(t2, u1), &u1);
}

TEST(ChooseBest, Examples) {
  Population pop{scored(5, 0), scored(1, 0), scored(3, 2), scored(0.5, 9)};
  EXPECT_EQ(choose_best(pop, std::vector<std::size_t>{2}), 2u);
  EXPECT_EQ(choose_best(pop, std::vector<std::size_t>{0, 1}), 1u);
  Population dom{scored(4, 3), scored(1, 0), scored(2, 1), scored(6, 5)};
  EXPECT_EQ(choose_best(dom), 1u);
  EXPECT_THROW(choose_best(pop, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(ChooseBest, ReturnsMemberOfRing) {
  Rng rng(31);
  Config c;
  const auto pop = init_population(problem1(), c, ScalarObjective::single_objective(0), rng);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto ring = ring_neighborhood(i, 2, pop.size());
    const auto b = choose_best(pop, ring);
    EXPECT_NE(std::find(ring.begin(), ring.end(), b), ring.end());
    const auto d = (b + pop.size() - i) % pop.size();
    EXPECT_TRUE(d <= 2 || d >= pop.size() - 2);
  }
}

TEST(DebBest, KeepsLowestIndexOnTie) {
  Population pop{scored(3, 0), scored(1, 0), scored(1, 0), scored(0, 1)};
  EXPECT_EQ(deb_best(pop), 1u);
}

// Scalarized subproblems the pipeline hands to the engine for each benchmark.
std::vector<std::pair<Problem, ScalarObjective>> subproblems() {
  std::vector<std::pair<Problem, ScalarObjective>> out;
  for (const auto& base : {problem1(), problem2(), problem3()}) {
    const auto aug = hybrid::augment_with_violation(base);
    for (std::size_t j = 0; j < aug.objective_count(); ++j) {
      out.emplace_back(aug, ScalarObjective::single_objective(j, Sense::minimize));
      out.emplace_back(aug, ScalarObjective::single_objective(j, Sense::maximize));
    }
    const auto anchors = hybrid::exact_stage1_anchors(aug);
    out.emplace_back(aug, hybrid::d_pis_objective(anchors));
    out.emplace_back(aug, hybrid::d_nis_objective(anchors));
  }
  return out;
}

TEST(DeProperty, ElitismBoxContainmentOverHundredGenerations) {
  for (auto variant : {Variant::rand1, Variant::best, Variant::degl}) {
    for (const auto& [problem, objective] : subproblems()) {
      Config c;
      c.variant = variant;
      c.max_iterations = 100;
      Rng rng(1234);
      Population previous;
      Score best_so_far;
      Score deb_so_far;
      bool first = true;
      RunTrace trace;
      trace.on_generation = [&](std::size_t, const Population& pop) {
        for (const auto& ind : pop) ASSERT_TRUE(problem.in_bounds(std::span<const double>(ind.x)));
        if (!previous.empty())
          for (std::size_t i = 0; i < pop.size(); ++i)
            EXPECT_FALSE(deb_better(previous[i].score, pop[i].score));
        const auto chosen = pop[choose_best(pop)].score;
        const auto deb = pop[deb_best(pop)].score;
        if (!first) {
          EXPECT_FALSE(deb_better(best_so_far, chosen)) << problem.name() << " " << to_string(variant);
          EXPECT_FALSE(deb_better(deb_so_far, deb));
        }
        best_so_far = chosen;
        deb_so_far = deb;
        first = false;
        previous = pop;
      };
      run(problem, c, objective, rng, std::nullopt, &trace);
    }
  }
}

TEST(DeProperty, Rand1NeverQueriesBest) {
  Config c;
  c.variant = Variant::rand1;
  c.max_iterations = 30;
  Rng rng(5);
  RunTrace trace;
  run(problem1(), c, ScalarObjective::single_objective(0), rng, std::nullopt, &trace);
  EXPECT_EQ(trace.gbest_queries, 0u);
  EXPECT_EQ(trace.local_best_queries, 0u);
  EXPECT_EQ(trace.evaluations, 40u * 31u);

  c.variant = Variant::degl;
  RunTrace degl;
  run(problem1(), c, ScalarObjective::single_objective(0), rng, std::nullopt, &degl);
  EXPECT_EQ(degl.gbest_queries, 30u);
  EXPECT_EQ(degl.local_best_queries, 30u * 40u);
}

TEST(DeProperty, ZeroScaleZeroCrossoverChangesOneComponent) {
  const auto p = square(0, 10);
  Rng rng(77);
  Config c;
  c.population_size = 8;
  const auto pop = init_population(p, c, ScalarObjective::single_objective(0), rng);
  for (int t = 0; t < 200; ++t) {
    const std::size_t i = rng.index(pop.size());
    const auto v = mutate_rand1(pop, i, 0.0, rng);
    const auto u = crossover(pop[i].x, v, 0.0, rng);
    int diff = 0;
    for (std::size_t j = 0; j < u.size(); ++j) diff += u[j] != pop[i].x[j];
    EXPECT_LE(diff, 1);
  }
}

TEST(Run, DeterministicPerSeed) {
  for (auto variant : {Variant::rand1, Variant::best, Variant::degl}) {
    Config c;
    c.variant = variant;
    c.max_iterations = 40;
    Rng a(99);
    Rng b(99);
    const auto pa = run(problem2(), c, ScalarObjective::single_objective(1), a);
    const auto pb = run(problem2(), c, ScalarObjective::single_objective(1), b);
    ASSERT_EQ(pa.size(), pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i].x, pb[i].x);
  }
}

TEST(Run, ZeroWidthBoxKeepsPopulation) {
  const auto p = square(3, 3);
  Config c;
  c.max_iterations = 10;
  Rng rng(1);
  for (const auto& ind : run(p, c, ScalarObjective::single_objective(0), rng))
    EXPECT_EQ(ind.x, (RealVector{3, 3}));
}

TEST(Run, InitialPopulationIsRescoredAndSizeChecked) {
  Config c;
  c.population_size = 5;
  c.max_iterations = 1;
  const auto p = square(0, 4);
  auto pop = from_points(p, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
  for (auto& ind : pop) ind.score = {-1000, 0};
  Rng rng(2);
  const auto out = run(p, c, ScalarObjective::single_objective(0, Sense::maximize), rng, pop);
  EXPECT_EQ(out[4].score.fitness, -8.0);
  pop.pop_back();
  EXPECT_THROW(run(p, c, ScalarObjective::single_objective(0), rng, pop), std::invalid_argument);
}

// Continuous maximizer of f1 = 2 x1 + 5 x2 on Problem 1: x2 sits at its upper
// bound 5 and x1 on the curve g1(x1, 5) = 0, located by bisection.
double continuous_f1_argmax_x1() {
  double lo = 1.0;
  double hi = 7.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (oracle::p1(mid, 5).g > 0 ? hi : lo) = mid;
  }
  return lo;
}

TEST(Run, FindsTheMaximumOfFirstObjective) {
  const double a = continuous_f1_argmax_x1();
  EXPECT_NEAR(a, 2.9495, 1e-3);
  Config c;
  c.max_iterations = 300;
  const auto obj = ScalarObjective::single_objective(0);
  int close = 0;
  int beats_lattice = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto pop = run(problem1(), c, obj, rng);
    const auto& best = pop[choose_best(pop)];
    ASSERT_TRUE(best.eval.feasible());
    close += std::hypot(best.x[0] - a, best.x[1] - 5.0) < 0.05;
    beats_lattice += -best.eval.objectives_min[0] >= 29.0;
  }
  EXPECT_GE(close, 18);
  EXPECT_GE(beats_lattice, 18);
}

}  // namespace
}  // namespace intmo::de

#include "intmo/benchmarks.hpp"

#include <algorithm>
#include <cmath>

namespace intmo::harness {

Problem problem1() {
  return Problem(
      "p1",
      {
          {"f1", Sense::maximize, [](std::span<const double> x) { return 2 * x[0] + 5 * x[1]; }},
          {"f2", Sense::maximize,
           [](std::span<const double> x) { return 3 * x[0] * x[1] - x[0] + 6 * x[1]; }},
          {"f3", Sense::maximize,
           [](std::span<const double> x) { return 2 * x[0] * x[0] + x[0] * x[1] - x[1]; }},
      },
      {
          {"g1",
           [](std::span<const double> x) {
             return x[0] + 2 * x[1] + 2.9 * std::sqrt(0.09 * x[0] * x[0] + 0.05 * x[1] * x[1] + 1) -
                    18;
           }},
          {"g2", [](std::span<const double> x) { return 3 * x[0] + 2 * x[1] - 22; }},
      },
      {1, 1}, {7, 5});
}

Problem problem2() {
  return Problem(
      "p2",
      {
          {"f1", Sense::minimize, [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1] * x[1]; }},
          {"f2", Sense::minimize, [](std::span<const double> x) { return 5 * x[0] * x[0] + x[1] * x[1]; }},
          {"f3", Sense::minimize, [](std::span<const double> x) { return 2 * x[0] * x[0] - x[1]; }},
      },
      {
          {"g1", [](std::span<const double> x) { return -x[0] - x[1] + 11; }},
      },
      {0, 0}, {16, 16});
}

// No explicit bounds are given for this problem; [0,12]x[0,7] contains the
// whole feasible region (5 x1 <= 57.5, x2 <= 6.5).
Problem problem3() {
  return Problem(
      "p3",
      {
          {"f1", Sense::maximize, [](std::span<const double> x) { return x[0]; }},
          {"f2", Sense::maximize, [](std::span<const double> x) { return x[1]; }},
      },
      {
          {"g1", [](std::span<const double> x) { return 2 * x[0] - x[1] - 21; }},
          {"g2", [](std::span<const double> x) { return 5 * x[0] + 1.5 * x[1] - 57.5; }},
          {"g3", [](std::span<const double> x) { return 4 * x[0] + 5 * x[1] - 61.1; }},
          {"g4", [](std::span<const double> x) { return 6 * x[0] + 15 * x[1] - 135; }},
          {"g5", [](std::span<const double> x) { return x[1] - 6.5; }},
      },
      {0, 0}, {12, 7});
}

std::vector<std::string> benchmark_names() { return {"p1", "p2", "p3"}; }

namespace {

BenchmarkSpec make_spec(Problem problem, std::vector<KnownSolution> known,
                        std::vector<IntVector> targets, std::string notes) {
  for (auto& k : known) {
    if (!problem.in_bounds(std::span<const std::int64_t>(k.x)))
      throw std::logic_error("benchmark " + problem.name() + ": known solution out of bounds");
    k.feasible = evaluate(problem, std::span<const std::int64_t>(k.x)).feasible();
  }
  return {std::move(problem), std::move(known), std::move(targets), std::move(notes)};
}

}  // namespace

BenchmarkSpec benchmark(const std::string& name) {
  if (name == "p1") {
    return make_spec(problem1(),
                     {{{4, 4}, "literature"}, {{2, 5}, "literature"}, {{6, 2}, "literature"},
                      {{5, 3}, "literature"}},
                     {{4, 4}, {2, 5}, {6, 2}, {5, 3}}, "three maximized objectives, two constraints");
  }
  if (name == "p2") {
    std::vector<KnownSolution> known;
    for (std::int64_t a = 1; a <= 10; ++a) known.push_back({{a, 11 - a}, "literature"});
    for (std::int64_t b = 11; b <= 16; ++b) known.push_back({{0, b}, "reported"});
    return make_spec(problem2(), std::move(known),
                     {{6, 5}, {2, 9}, {4, 7}, {5, 6}, {3, 8}, {7, 4}, {8, 3}, {0, 11}, {0, 14},
                      {1, 10}, {0, 15}, {0, 12}, {0, 16}, {0, 13}},
                     "(10,1) and (9,2) are listed as known but are dominated by (7,4) and (8,3)");
  }
  if (name == "p3") {
    return make_spec(problem3(),
                     {{{9, 5}, "literature"}, {{10, 4}, "reported"}, {{11, 1}, "reported"},
                      {{7, 6}, "reported"}, {{5, 7}, "reported"}},
                     {{9, 5}},
                     "search box [0,12]x[0,7] chosen to contain the feasible region; the reported "
                     "solution (5,7) violates x2 <= 6.5");
  }
  throw UsageError("unknown problem '" + name + "' (valid: p1, p2, p3)");
}

VerificationReport verify_known(const BenchmarkSpec& spec) {
  const auto& problem = spec.problem;
  const auto feasible = enumerate_feasible(problem);
  const auto front = pareto_filter(feasible);

  VerificationReport report;
  report.problem = problem.name();
  for (const auto& p : front) report.pareto_set.push_back(p.x);

  for (const auto& known : spec.known_solutions) {
    KnownCheck check;
    check.x = known.x;
    check.provenance = known.provenance;
    check.in_bounds = problem.in_bounds(std::span<const std::int64_t>(known.x));
    const auto e = evaluate(problem, std::span<const std::int64_t>(known.x));
    check.feasible = e.feasible();
    check.violation = e.violation;
    check.pareto = std::find(report.pareto_set.begin(), report.pareto_set.end(), known.x) !=
                   report.pareto_set.end();
    for (const auto& p : feasible)
      if (dominates(p.eval, e)) check.dominated_by.push_back(p.x);
    report.checks.push_back(std::move(check));
  }

  std::vector<Evaluation> literature;
  for (const auto& known : spec.known_solutions) {
    if (known.provenance != "literature") continue;
    auto e = evaluate(problem, std::span<const std::int64_t>(known.x));
    if (e.feasible()) literature.push_back(std::move(e));
  }
  for (const auto& a : literature)
    for (const auto& b : literature)
      if (dominates(a, b)) report.literature_mutually_non_dominated = false;
  return report;
}

}  // namespace intmo::harness

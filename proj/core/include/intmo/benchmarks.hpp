#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "intmo/problem.hpp"

namespace intmo::harness {

/// Raised for bad user input (unknown names, malformed flags); maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct KnownSolution {
  IntVector x;
  /// "literature" for solutions listed as known, "reported" for solutions
  /// only appearing in reported success-rate listings.
  std::string provenance;
  bool feasible = true;
};

struct BenchmarkSpec {
  Problem problem;
  std::vector<KnownSolution> known_solutions;
  /// Solutions a reproduction is expected to find (feasible and Pareto).
  std::vector<IntVector> targets;
  std::string notes;
};

Problem problem1();
Problem problem2();
Problem problem3();

std::vector<std::string> benchmark_names();

/// "p1", "p2" or "p3". Throws UsageError otherwise.
BenchmarkSpec benchmark(const std::string& name);

struct KnownCheck {
  IntVector x;
  std::string provenance;
  bool in_bounds = false;
  bool feasible = false;
  double violation = 0.0;
  bool pareto = false;
  /// Feasible lattice points dominating x, lexicographic order.
  std::vector<IntVector> dominated_by;
};

struct VerificationReport {
  std::string problem;
  std::vector<KnownCheck> checks;
  std::vector<IntVector> pareto_set;
  /// No feasible literature solution dominates another.
  bool literature_mutually_non_dominated = true;
};

/// Cross-checks every known solution against the brute-force lattice oracle.
VerificationReport verify_known(const BenchmarkSpec& spec);

}  // namespace intmo::harness

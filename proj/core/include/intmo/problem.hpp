#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace intmo {

using RealVector = std::vector<double>;
using IntVector = std::vector<std::int64_t>;
using ScalarFunction = std::function<double(std::span<const double>)>;

enum class Sense { minimize, maximize };

struct Objective {
  std::string name;
  Sense sense = Sense::minimize;
  ScalarFunction fn;
};

/// Inequality constraint, satisfied when fn(x) <= 0.
struct Constraint {
  std::string name;
  ScalarFunction fn;
};

/// Integer-box multi-objective problem. Immutable after construction.
class Problem {
 public:
  Problem(std::string name, std::vector<Objective> objectives,
          std::vector<Constraint> constraints, IntVector lower, IntVector upper);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return lower_.size(); }
  std::size_t objective_count() const { return objectives_.size(); }
  std::size_t constraint_count() const { return constraints_.size(); }

  const std::vector<Objective>& objectives() const { return objectives_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const IntVector& lower() const { return lower_; }
  const IntVector& upper() const { return upper_; }

  bool in_bounds(std::span<const double> x) const;
  bool in_bounds(std::span<const std::int64_t> x) const;

 private:
  std::string name_;
  std::vector<Objective> objectives_;
  std::vector<Constraint> constraints_;
  IntVector lower_;
  IntVector upper_;
};

/// Objective values in minimization sense plus the maximum constraint
/// violation G(x) = max(0, g_1(x), ..., g_m(x)).
struct Evaluation {
  RealVector objectives_min;
  double violation = 0.0;

  bool feasible() const { return violation == 0.0; }
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

Evaluation evaluate(const Problem& problem, std::span<const double> x);
Evaluation evaluate(const Problem& problem, std::span<const std::int64_t> x);

/// Pareto dominance on objectives_min; violation is not consulted.
bool dominates(const Evaluation& a, const Evaluation& b);

struct LatticePoint {
  IntVector x;
  Evaluation eval;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Feasible, mutually non-dominated subset of `points`, duplicates collapsed,
/// sorted lexicographically by x.
std::vector<LatticePoint> pareto_filter(std::span<const LatticePoint> points);

class LatticeTooLarge : public std::runtime_error {
 public:
  LatticeTooLarge(std::uint64_t size, std::uint64_t limit);
  std::uint64_t size() const { return size_; }

 private:
  std::uint64_t size_;
};

inline constexpr std::uint64_t kDefaultLatticeLimit = 10'000'000;

/// Number of integer points in the box, saturating at UINT64_MAX.
std::uint64_t lattice_size(const Problem& problem);

/// Calls `visit` for every integer point of the box in lexicographic order.
void for_each_lattice_point(const Problem& problem,
                            const std::function<void(const IntVector&)>& visit,
                            std::uint64_t limit = kDefaultLatticeLimit);

/// Every feasible lattice point with its evaluation, lexicographic order.
std::vector<LatticePoint> enumerate_feasible(const Problem& problem,
                                             std::uint64_t limit = kDefaultLatticeLimit);

/// Exhaustive Pareto set of the integer lattice. Throws LatticeTooLarge when
/// the box holds more than `limit` points.
std::vector<LatticePoint> brute_force_pareto(const Problem& problem,
                                             std::uint64_t limit = kDefaultLatticeLimit);

/// A scalar fitness (minimized) paired with its constraint violation.
struct Score {
  double fitness = 0.0;
  double violation = 0.0;
};

/// Deb's feasibility rules: feasible beats infeasible, two feasibles compare
/// fitness, two infeasibles compare violation. Ties return false.
bool deb_better(const Score& a, const Score& b);

/// Deb comparison using objectives_min[scalar_index] as fitness; -1 selects
/// objective 0.
bool deb_better(const Evaluation& a, const Evaluation& b, int scalar_index);

}  // namespace intmo

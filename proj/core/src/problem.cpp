#include "intmo/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace intmo {

Problem::Problem(std::string name, std::vector<Objective> objectives,
                 std::vector<Constraint> constraints, IntVector lower, IntVector upper)
    : name_(std::move(name)),
      objectives_(std::move(objectives)),
      constraints_(std::move(constraints)),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("problem '" + name_ + "': dimension must be >= 1");
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("problem '" + name_ + "': bound vectors differ in length");
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (lower_[j] > upper_[j])
      throw std::invalid_argument("problem '" + name_ + "': lower bound exceeds upper bound at x" +
                                  std::to_string(j + 1));
  }
  if (objectives_.empty())
    throw std::invalid_argument("problem '" + name_ + "': needs at least one objective");
  for (const auto& o : objectives_)
    if (!o.fn) throw std::invalid_argument("problem '" + name_ + "': objective '" + o.name + "' is empty");
  for (const auto& c : constraints_)
    if (!c.fn) throw std::invalid_argument("problem '" + name_ + "': constraint '" + c.name + "' is empty");
}

bool Problem::in_bounds(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < static_cast<double>(lower_[j]) || x[j] > static_cast<double>(upper_[j])) return false;
  return true;
}

bool Problem::in_bounds(std::span<const std::int64_t> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
  return true;
}

Evaluation evaluate(const Problem& problem, std::span<const double> x) {
  if (x.size() != problem.dimension())
    throw std::invalid_argument("evaluate: expected " + std::to_string(problem.dimension()) +
                                " variables, got " + std::to_string(x.size()));
  Evaluation e;
  e.objectives_min.reserve(problem.objective_count());
  for (const auto& o : problem.objectives()) {
    const double v = o.fn(x);
    if (!std::isfinite(v))
      throw std::domain_error("evaluate: objective '" + o.name + "' of problem '" + problem.name() +
                              "' is not finite");
    e.objectives_min.push_back(o.sense == Sense::minimize ? v : -v);
  }
  for (const auto& c : problem.constraints()) {
    const double g = c.fn(x);
    if (!std::isfinite(g))
      throw std::domain_error("evaluate: constraint '" + c.name + "' of problem '" + problem.name() +
                              "' is not finite");
    e.violation = std::max(e.violation, g);
  }
  return e;
}

Evaluation evaluate(const Problem& problem, std::span<const std::int64_t> x) {
  RealVector real(x.begin(), x.end());
  return evaluate(problem, real);
}

bool dominates(const Evaluation& a, const Evaluation& b) {
  const auto& fa = a.objectives_min;
  const auto& fb = b.objectives_min;
  if (fa.size() != fb.size())
    throw std::invalid_argument("dominates: objective vectors differ in length");
  bool strictly = false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i] > fb[i]) return false;
    if (fa[i] < fb[i]) strictly = true;
  }
  return strictly;
}

std::vector<LatticePoint> pareto_filter(std::span<const LatticePoint> points) {
  std::map<IntVector, const LatticePoint*> unique;
  for (const auto& p : points)
    if (p.eval.feasible()) unique.emplace(p.x, &p);

  std::vector<LatticePoint> out;
  for (const auto& [x, p] : unique) {
    const bool dominated = std::any_of(unique.begin(), unique.end(), [&](const auto& other) {
      return dominates(other.second->eval, p->eval);
    });
    if (!dominated) out.push_back(*p);
  }
  return out;
}

LatticeTooLarge::LatticeTooLarge(std::uint64_t size, std::uint64_t limit)
    : std::runtime_error("lattice has " + std::to_string(size) + " points, exceeding the limit of " +
                         std::to_string(limit)),
      size_(size) {}

std::uint64_t lattice_size(const Problem& problem) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 1;
  for (std::size_t j = 0; j < problem.dimension(); ++j) {
    const auto width = static_cast<std::uint64_t>(problem.upper()[j] - problem.lower()[j]) + 1;
    if (size > kMax / width) return kMax;
    size *= width;
  }
  return size;
}

void for_each_lattice_point(const Problem& problem,
                            const std::function<void(const IntVector&)>& visit,
                            std::uint64_t limit) {
  const auto size = lattice_size(problem);
  if (size > limit) throw LatticeTooLarge(size, limit);

  IntVector x = problem.lower();
  const std::size_t n = x.size();
  while (true) {
    visit(x);
    // odometer increment, last coordinate fastest
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (x[j] < problem.upper()[j]) {
        ++x[j];
        break;
      }
      x[j] = problem.lower()[j];
      if (j == 0) return;
    }
  }
}

std::vector<LatticePoint> enumerate_feasible(const Problem& problem, std::uint64_t limit) {
  std::vector<LatticePoint> out;
  for_each_lattice_point(
      problem,
      [&](const IntVector& x) {
        auto e = evaluate(problem, std::span<const std::int64_t>(x));
        if (e.feasible()) out.push_back({x, std::move(e)});
      },
      limit);
  return out;
}

std::vector<LatticePoint> brute_force_pareto(const Problem& problem, std::uint64_t limit) {
  return pareto_filter(enumerate_feasible(problem, limit));
}

bool deb_better(const Score& a, const Score& b) {
  const bool fa = a.violation == 0.0;
  const bool fb = b.violation == 0.0;
  if (fa && fb) return a.fitness < b.fitness;
  if (fa != fb) return fa;
  return a.violation < b.violation;
}

bool deb_better(const Evaluation& a, const Evaluation& b, int scalar_index) {
  const std::size_t idx = scalar_index < 0 ? 0 : static_cast<std::size_t>(scalar_index);
  if (scalar_index < -1 || idx >= a.objectives_min.size() || idx >= b.objectives_min.size())
    throw std::out_of_range("deb_better: scalar index " + std::to_string(scalar_index) +
                            " out of range");
  return deb_better(Score{a.objectives_min[idx], a.violation},
                    Score{b.objectives_min[idx], b.violation});
}

}  // namespace intmo

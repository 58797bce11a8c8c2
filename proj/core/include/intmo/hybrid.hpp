#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intmo/de.hpp"
#include "intmo/problem.hpp"
#include "intmo/random.hpp"
#include "intmo/tabu.hpp"

namespace intmo::hybrid {

/// Which tabu-search output feeds the archive.
enum class Harvest {
  /// Every feasible point the search moves through, including its result.
  trajectory,
  /// Only the best point returned by each search.
  results,
};

std::string to_string(Harvest h);
Harvest parse_harvest(const std::string& name);

struct Config {
  de::Config de;
  std::size_t ts_iterations = 1000;
  std::size_t alternations = 10;
  std::size_t runs = 20;
  bool include_violation_objective = true;
  /// Replace the stage-one DE anchors with exact lattice anchors.
  bool oracle_anchors = false;
  Harvest harvest = Harvest::trajectory;
  tabu::Options tabu;

  void validate() const;
};

inline constexpr const char* kViolationObjectiveName = "violation";

/// Appends G(x) as a minimized objective named "violation". Constraints are
/// kept so the engine can still apply Deb's rules. Unconstrained problems are
/// returned unchanged.
Problem augment_with_violation(const Problem& problem);

/// Index of the appended violation objective, if the problem has one.
std::optional<std::size_t> violation_objective_index(const Problem& problem);

struct CompromiseAnchors {
  RealVector f_star;
  RealVector f_minus;
  /// Zero for dropped (degenerate) objectives, 1/retained otherwise.
  RealVector weights;
  std::vector<std::size_t> dropped;

  double d_pis_star = 0.0;
  double d_nis_star = 0.0;
  double d_pis_prime = 0.0;
  double d_nis_prime = 0.0;
  RealVector x_p;
  RealVector x_n;
  bool mu1_degenerate = false;
  bool mu2_degenerate = false;
};

/// Fills weights/dropped from f_star and f_minus: objectives with
/// f_star == f_minus are dropped and the rest share equal weight.
void assign_weights(CompromiseAnchors& anchors);

/// Per-objective PIS/NIS by 2k single-objective DEGL runs. The violation
/// objective's NIS is searched feasibility-blind.
CompromiseAnchors stage1_anchors(const Problem& augmented, const Config& config, Rng& rng);

/// PIS/NIS over the feasible integer lattice (violation NIS over the whole
/// lattice). Test oracle and `oracle_anchors` backend.
CompromiseAnchors exact_stage1_anchors(const Problem& augmented,
                                       std::uint64_t limit = kDefaultLatticeLimit);

double d_pis(const Evaluation& e, const CompromiseAnchors& anchors);
double d_nis(const Evaluation& e, const CompromiseAnchors& anchors);

/// Minimizes d_pis and maximizes d_nis with DEGL, then cross-evaluates the
/// two optima to obtain the primed anchors.
CompromiseAnchors stage2_anchors(const Problem& augmented, CompromiseAnchors anchors,
                                 const Config& config, Rng& rng);

double mu1(double d_pis_value, const CompromiseAnchors& anchors);
double mu2(double d_nis_value, const CompromiseAnchors& anchors);
double mu1(const Evaluation& e, const CompromiseAnchors& anchors);
double mu2(const Evaluation& e, const CompromiseAnchors& anchors);

/// min(mu1, mu2): the largest alpha with mu1 >= alpha and mu2 >= alpha.
double maxmin_satisfaction(const Evaluation& e, const CompromiseAnchors& anchors);

de::ScalarObjective d_pis_objective(const CompromiseAnchors& anchors);
de::ScalarObjective d_nis_objective(const CompromiseAnchors& anchors);
de::ScalarObjective maxmin_objective(const CompromiseAnchors& anchors);

/// Feasible integer solutions with per-run discovery counts.
class SolutionArchive {
 public:
  struct Entry {
    Evaluation eval;
    std::size_t count = 0;
    std::size_t first_run = 0;
    std::size_t last_run = 0;
  };

  /// Records x as discovered in `run`. Infeasible points are rejected.
  bool insert(const IntVector& x, const Evaluation& eval, std::size_t run);

  /// Keeps only mutually non-dominated entries.
  void finalize();

  /// Adds every entry of another archive, counting each run once.
  void merge(const SolutionArchive& other);

  bool contains(const IntVector& x) const { return entries_.contains(x); }
  std::size_t size() const { return entries_.size(); }
  const std::map<IntVector, Entry>& entries() const { return entries_; }

 private:
  std::map<IntVector, Entry> entries_;
};

/// Alternates DE on the max-min objective with tabu refinement of every
/// member, harvesting feasible integer points into `archive`, which is
/// finalized on the original objectives.
void stage3_alternate(const Problem& original, const Problem& augmented,
                      const CompromiseAnchors& anchors, const Config& config, Rng& rng,
                      SolutionArchive& archive, std::size_t run_id = 0);

struct RunResult {
  SolutionArchive archive;
  CompromiseAnchors anchors;
  std::vector<std::string> notes;
};

/// Full pipeline for one run.
RunResult solve(const Problem& problem, const Config& config, Rng& rng, std::size_t run_id = 0);

}  // namespace intmo::hybrid

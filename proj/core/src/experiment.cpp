#include "intmo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace intmo::harness {

double ExperimentReport::rate_percent(const IntVector& x) const {
  const auto it = counts.find(x);
  const auto count = it == counts.end() ? 0 : it->second;
  return 100.0 * static_cast<double>(count) / static_cast<double>(runs);
}

bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
  const auto& ca = a.config;
  const auto& cb = b.config;
  const bool same_config =
      ca.de.population_size == cb.de.population_size && ca.de.max_iterations == cb.de.max_iterations &&
      ca.de.crossover_rate == cb.de.crossover_rate && ca.de.scale_factor == cb.de.scale_factor &&
      ca.de.alpha == cb.de.alpha && ca.de.beta == cb.de.beta &&
      ca.de.neighborhood_k == cb.de.neighborhood_k && ca.de.variant == cb.de.variant &&
      ca.de.canonical_best == cb.de.canonical_best && ca.ts_iterations == cb.ts_iterations &&
      ca.alternations == cb.alternations && ca.runs == cb.runs &&
      ca.include_violation_objective == cb.include_violation_objective &&
      ca.oracle_anchors == cb.oracle_anchors && ca.harvest == cb.harvest &&
      ca.tabu.literal_diversification == cb.tabu.literal_diversification;
  return same_config && a.schema_version == b.schema_version && a.problem == b.problem &&
         a.variant == b.variant && a.runs == b.runs && a.master_seed == b.master_seed &&
         a.seeds == b.seeds && a.wall_clock_seconds == b.wall_clock_seconds && a.counts == b.counts;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index) {
  return mix_seed(master_seed, run_index);
}

ExperimentReport run_experiment(const BenchmarkSpec& spec, de::Variant variant,
                                hybrid::Config config, std::uint64_t master_seed,
                                unsigned threads) {
  config.de.variant = variant;
  config.validate();

  const std::size_t runs = config.runs;
  ExperimentReport report;
  report.problem = spec.problem.name();
  report.variant = de::to_string(variant);
  report.runs = runs;
  report.master_seed = master_seed;
  report.config = config;
  report.seeds.resize(runs);
  report.wall_clock_seconds.resize(runs);
  for (std::size_t r = 0; r < runs; ++r) report.seeds[r] = run_seed(master_seed, r);

  std::vector<hybrid::SolutionArchive> archives(runs);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::pair<std::size_t, std::string>> failure;

  const auto worker = [&] {
    for (std::size_t r = next++; r < runs; r = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        Rng rng(report.seeds[r]);
        archives[r] = hybrid::solve(spec.problem, config, rng, r).archive;
        report.wall_clock_seconds[r] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure || failure->first > r) failure.emplace(r, e.what());
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (failure)
    throw std::runtime_error("experiment " + report.problem + "/" + report.variant + ": run " +
                             std::to_string(failure->first) + " (seed " +
                             std::to_string(report.seeds[failure->first]) +
                             ") failed: " + failure->second);

  for (const auto& archive : archives) {
    for (const auto& [x, entry] : archive.entries()) {
      if (!entry.eval.feasible())
        throw std::logic_error("experiment: archive holds an infeasible solution");
      ++report.counts[x];
    }
  }
  return report;
}

}  // namespace intmo::harness

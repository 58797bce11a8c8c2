#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "intmo/benchmarks.hpp"
#include "intmo/hybrid.hpp"

namespace intmo::harness {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  std::string problem;
  std::string variant;
  std::size_t runs = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> wall_clock_seconds;
  /// Number of runs whose finalized archive contains each solution.
  std::map<IntVector, std::size_t> counts;
  hybrid::Config config;

  double rate_percent(const IntVector& x) const;
};

bool operator==(const ExperimentReport& a, const ExperimentReport& b);

/// Seed of run `run_index`: SplitMix64 mix of the master seed and the index.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index);

/// Runs the hybrid solver config.runs times with derived seeds, concurrently
/// on up to `threads` workers (0 = hardware concurrency). The result does not
/// depend on the thread count.
ExperimentReport run_experiment(const BenchmarkSpec& spec, de::Variant variant,
                                hybrid::Config config, std::uint64_t master_seed,
                                unsigned threads = 0);

}  // namespace intmo::harness

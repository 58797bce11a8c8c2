#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intmo/benchmarks.hpp"
#include "intmo/experiment.hpp"
#include "intmo/hybrid.hpp"
#include "intmo/topsis.hpp"

namespace intmo::harness {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

/// Throws UsageError for anything but "csv" or "json".
Format parse_format(const std::string& name);

/// "(4,4)".
std::string format_solution(const IntVector& x);

/// Shortest round-trip decimal, always with a fractional part ("90.0").
std::string format_number(double v);

/// Header `solution,count,rate_percent,variant,problem`, one row per solution,
/// descending count then lexicographic solution. LF line endings.
std::string to_csv(const ExperimentReport& report);

/// Lossless JSON document with schema_version, seeds and the config echo.
std::string to_json(const ExperimentReport& report);
ExperimentReport report_from_json(std::string_view text);

void emit(const ExperimentReport& report, Format format, std::ostream& out);
/// Writes to `path`; throws IoError naming the path when it cannot be written.
void emit(const ExperimentReport& report, Format format, const std::filesystem::path& path);

/// Flat JSON object keyed by the DE/hybrid configuration field names.
std::string config_to_json(const hybrid::Config& config);
/// Overrides fields of `base` with the keys present in `text`. Unknown keys
/// and ill-typed values throw UsageError.
hybrid::Config config_from_json(std::string_view text, hybrid::Config base = {});
hybrid::Config load_config(const std::filesystem::path& path, hybrid::Config base = {});

/// One row per archived solution: solution, original objective values
/// (problem's own senses), first run.
std::string archive_to_csv(const hybrid::SolutionArchive& archive, const Problem& problem);

std::string verification_to_text(const VerificationReport& report);
std::string verification_to_json(const VerificationReport& report);

/// Reads a decision matrix: a header row of criterion names followed by
/// numeric rows. `senses` and `weights` default to all-cost and uniform.
topsis::DecisionMatrix read_decision_matrix(std::istream& in,
                                            const std::vector<topsis::Criterion>& senses = {},
                                            const std::vector<double>& weights = {});

/// Columns rank,row,closeness,d_plus,d_minus in ranking order; rows are
/// numbered from 1 in input order.
std::string ranking_to_csv(const topsis::TopsisRanking& ranking);

}  // namespace intmo::harness

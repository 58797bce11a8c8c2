#include "intmo/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace intmo::harness {

using nlohmann::json;

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::string format_solution(const IntVector& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(x[j]);
  }
  return s + ")";
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string to_csv(const ExperimentReport& report) {
  std::vector<std::pair<IntVector, std::size_t>> rows(report.counts.begin(), report.counts.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "solution,count,rate_percent,variant,problem\n";
  for (const auto& [x, count] : rows) {
    out += '"' + format_solution(x) + "\"," + std::to_string(count) + ',' +
           format_number(report.rate_percent(x)) + ',' + report.variant + ',' + report.problem + '\n';
  }
  return out;
}

namespace {

json config_json(const hybrid::Config& c) {
  return json{{"population_size", c.de.population_size},
              {"max_iterations", c.de.max_iterations},
              {"crossover_rate", c.de.crossover_rate},
              {"scale_factor", c.de.scale_factor},
              {"alpha", c.de.alpha},
              {"beta", c.de.beta},
              {"neighborhood_k", c.de.neighborhood_k},
              {"variant", de::to_string(c.de.variant)},
              {"canonical_best", c.de.canonical_best},
              {"ts_iterations", c.ts_iterations},
              {"alternations", c.alternations},
              {"runs", c.runs},
              {"include_violation_objective", c.include_violation_objective},
              {"oracle_anchors", c.oracle_anchors},
              {"harvest", hybrid::to_string(c.harvest)},
              {"literal_diversification", c.tabu.literal_diversification}};
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  try {
    out = j.get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

hybrid::Config apply_config(const json& j, hybrid::Config c) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const char* k = key.c_str();
    if (key == "population_size") read_field(value, k, c.de.population_size);
    else if (key == "max_iterations") read_field(value, k, c.de.max_iterations);
    else if (key == "crossover_rate") read_field(value, k, c.de.crossover_rate);
    else if (key == "scale_factor") read_field(value, k, c.de.scale_factor);
    else if (key == "alpha") read_field(value, k, c.de.alpha);
    else if (key == "beta") read_field(value, k, c.de.beta);
    else if (key == "neighborhood_k") read_field(value, k, c.de.neighborhood_k);
    else if (key == "canonical_best") read_field(value, k, c.de.canonical_best);
    else if (key == "ts_iterations") read_field(value, k, c.ts_iterations);
    else if (key == "alternations") read_field(value, k, c.alternations);
    else if (key == "runs") read_field(value, k, c.runs);
    else if (key == "include_violation_objective") read_field(value, k, c.include_violation_objective);
    else if (key == "oracle_anchors") read_field(value, k, c.oracle_anchors);
    else if (key == "literal_diversification") read_field(value, k, c.tabu.literal_diversification);
    else if (key == "variant" || key == "harvest") {
      std::string name;
      read_field(value, k, name);
      try {
        if (key == "variant") c.de.variant = de::parse_variant(name);
        else c.harvest = hybrid::parse_harvest(name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return c;
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
  json counts = json::array();
  for (const auto& [x, count] : report.counts)
    counts.push_back({{"solution", x}, {"count", count}, {"rate_percent", report.rate_percent(x)}});
  json j{{"schema_version", report.schema_version},
         {"problem", report.problem},
         {"variant", report.variant},
         {"runs", report.runs},
         {"master_seed", report.master_seed},
         {"seeds", report.seeds},
         {"wall_clock_seconds", report.wall_clock_seconds},
         {"counts", counts},
         {"config", config_json(report.config)}};
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    ExperimentReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
      throw std::runtime_error("unsupported report schema_version " +
                               std::to_string(r.schema_version));
    r.problem = j.at("problem").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.runs = j.at("runs").get<std::size_t>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.wall_clock_seconds = j.at("wall_clock_seconds").get<std::vector<double>>();
    for (const auto& row : j.at("counts"))
      r.counts[row.at("solution").get<IntVector>()] = row.at("count").get<std::size_t>();
    r.config = apply_config(j.at("config"), {});
    return r;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed report JSON: ") + e.what());
  }
}

void emit(const ExperimentReport& report, Format format, std::ostream& out) {
  out << (format == Format::csv ? to_csv(report) : to_json(report));
}

void emit(const ExperimentReport& report, Format format, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  emit(report, format, file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

std::string config_to_json(const hybrid::Config& config) { return config_json(config).dump(2) + "\n"; }

hybrid::Config config_from_json(std::string_view text, hybrid::Config base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  return apply_config(j, std::move(base));
}

hybrid::Config load_config(const std::filesystem::path& path, hybrid::Config base) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << file.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

std::string archive_to_csv(const hybrid::SolutionArchive& archive, const Problem& problem) {
  std::string out = "solution";
  for (const auto& o : problem.objectives()) out += "," + o.name;
  out += ",first_run\n";
  for (const auto& [x, entry] : archive.entries()) {
    out += '"' + format_solution(x) + '"';
    for (std::size_t i = 0; i < problem.objective_count(); ++i) {
      const double v = entry.eval.objectives_min[i];
      out += ',' + format_number(problem.objectives()[i].sense == Sense::minimize ? v : -v);
    }
    out += ',' + std::to_string(entry.first_run) + '\n';
  }
  return out;
}

namespace {

std::string join_solutions(const std::vector<IntVector>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + format_solution(x);
  return s.empty() ? "-" : s;
}

}  // namespace

std::string verification_to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "problem " << report.problem << "\n";
  out << "lattice pareto set: " << join_solutions(report.pareto_set) << "\n";
  for (const auto& c : report.checks) {
    out << format_solution(c.x) << " [" << c.provenance << "]"
        << " feasible=" << (c.feasible ? "yes" : "no");
    if (!c.feasible) out << " (violation " << format_number(c.violation) << ")";
    out << " pareto=" << (c.pareto ? "yes" : "no");
    if (!c.dominated_by.empty()) out << " dominated_by=" << join_solutions(c.dominated_by);
    out << "\n";
  }
  out << "literature solutions mutually non-dominated: "
      << (report.literature_mutually_non_dominated ? "yes" : "no") << "\n";
  return out.str();
}

std::string verification_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"solution", c.x},
                      {"provenance", c.provenance},
                      {"in_bounds", c.in_bounds},
                      {"feasible", c.feasible},
                      {"violation", c.violation},
                      {"pareto", c.pareto},
                      {"dominated_by", c.dominated_by}});
  json j{{"schema_version", kReportSchemaVersion},
         {"problem", report.problem},
         {"pareto_set", report.pareto_set},
         {"checks", checks},
         {"literature_mutually_non_dominated", report.literature_mutually_non_dominated}};
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r\"");
    const auto e = cell.find_last_not_of(" \t\r\"");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

}  // namespace

topsis::DecisionMatrix read_decision_matrix(std::istream& in,
                                            const std::vector<topsis::Criterion>& senses,
                                            const std::vector<double>& weights) {
  std::string line;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    cols = split_csv_line(line).size();
    break;
  }
  if (cols == 0) throw UsageError("decision matrix: missing header row");

  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != cols)
      throw UsageError("decision matrix: line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " + std::to_string(cols));
    for (const auto& cell : cells) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw UsageError("decision matrix: line " + std::to_string(line_no) + ": '" + cell +
                         "' is not a number");
      data.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw UsageError("decision matrix: no alternatives");

  auto s = senses.empty() ? std::vector<topsis::Criterion>(cols, topsis::Criterion::cost) : senses;
  auto w = weights.empty() ? topsis::uniform_weights(cols) : weights;
  try {
    return topsis::DecisionMatrix(topsis::Matrix(rows, cols, std::move(data)), std::move(s),
                                  std::move(w));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string ranking_to_csv(const topsis::TopsisRanking& ranking) {
  std::string out = "rank,row,closeness,d_plus,d_minus\n";
  for (std::size_t r = 0; r < ranking.order.size(); ++r) {
    const auto i = ranking.order[r];
    out += std::to_string(r + 1) + ',' + std::to_string(i + 1) + ',' +
           format_number(ranking.closeness[i]) + ',' + format_number(ranking.d_plus[i]) + ',' +
           format_number(ranking.d_minus[i]) + '\n';
  }
  return out;
}

}  // namespace intmo::harness

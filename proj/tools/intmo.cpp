// intmo: command line front end for the integer multi-objective solver.
//
//   intmo solve      --problem p1 [--variant degl] [--seed N]
//   intmo experiment --problem p1 --variant rand1 [--runs 20] [--seed N]
//                    [--format csv|json] [--out FILE]
//   intmo verify     --problem p2 [--format json]
//   intmo rank       --input matrix.csv [--senses cost,benefit] [--weights .5,.5]
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intmo/benchmarks.hpp"
#include "intmo/experiment.hpp"
#include "intmo/hybrid.hpp"
#include "intmo/report.hpp"
#include "intmo/topsis.hpp"

namespace {

using namespace intmo;

struct Options {
  std::string problem = "p1";
  std::string variant = "degl";
  std::size_t runs = 0;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string verify_format = "text";
  std::string out;
  std::string config_path;
  bool oracle_anchors = false;
  bool canonical_best = false;
  unsigned threads = 0;

  std::string input;
  std::string senses;
  std::string weights;
};

hybrid::Config build_config(const Options& o) {
  hybrid::Config config;
  if (!o.config_path.empty()) config = harness::load_config(o.config_path, config);
  try {
    config.de.variant = de::parse_variant(o.variant);
  } catch (const std::invalid_argument& e) {
    throw harness::UsageError(e.what());
  }
  if (o.runs > 0) config.runs = o.runs;
  if (o.oracle_anchors) config.oracle_anchors = true;
  if (o.canonical_best) config.de.canonical_best = true;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw harness::UsageError(e.what());
  }
  for (const auto& w : config.de.warnings()) std::cerr << "warning: " << w << "\n";
  return config;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw harness::IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file.flush()) throw harness::IoError("failed writing '" + path + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int cmd_solve(const Options& o) {
  const auto spec = harness::benchmark(o.problem);
  const auto config = build_config(o);
  Rng rng(o.seed);
  const auto result = hybrid::solve(spec.problem, config, rng);
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  write_output(harness::archive_to_csv(result.archive, spec.problem), o.out);
  return 0;
}

int cmd_experiment(const Options& o) {
  const auto spec = harness::benchmark(o.problem);
  const auto config = build_config(o);
  const auto format = harness::parse_format(o.format);
  const auto report =
      harness::run_experiment(spec, config.de.variant, config, o.seed, o.threads);
  write_output(format == harness::Format::csv ? harness::to_csv(report) : harness::to_json(report),
               o.out);
  return 0;
}

int cmd_verify(const Options& o) {
  const auto spec = harness::benchmark(o.problem);
  const auto report = harness::verify_known(spec);
  const bool json = o.verify_format == "json";
  if (!json && o.verify_format != "text")
    throw harness::UsageError("verify supports --format text or json");
  write_output(json ? harness::verification_to_json(report) : harness::verification_to_text(report),
               o.out);
  return 0;
}

int cmd_rank(const Options& o) {
  std::vector<topsis::Criterion> senses;
  for (const auto& s : split_list(o.senses)) {
    if (s == "cost") senses.push_back(topsis::Criterion::cost);
    else if (s == "benefit") senses.push_back(topsis::Criterion::benefit);
    else throw harness::UsageError("unknown criterion sense '" + s + "' (expected cost or benefit)");
  }
  std::vector<double> weights;
  for (const auto& w : split_list(o.weights)) {
    try {
      weights.push_back(std::stod(w));
    } catch (const std::exception&) {
      throw harness::UsageError("weight '" + w + "' is not a number");
    }
  }

  topsis::DecisionMatrix matrix = [&] {
    if (o.input.empty() || o.input == "-") return harness::read_decision_matrix(std::cin, senses, weights);
    std::ifstream file(o.input);
    if (!file) throw harness::IoError("cannot read '" + o.input + "'");
    return harness::read_decision_matrix(file, senses, weights);
  }();
  write_output(harness::ranking_to_csv(topsis::rank(matrix)), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer multi-objective optimization with TOPSIS, differential evolution and tabu search"};
  app.require_subcommand(1);
  Options o;

  const auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problem", o.problem, "Benchmark problem: p1, p2 or p3");
    cmd->add_option("--variant", o.variant, "DE variant: rand1, best or degl");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--config", o.config_path, "JSON file overriding default parameters");
    cmd->add_flag("--oracle-anchors", o.oracle_anchors, "Use exact lattice anchors in stage one");
    cmd->add_flag("--canonical-best", o.canonical_best, "Use the textbook DE/best/1 donor");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };

  auto* solve = app.add_subcommand("solve", "Run the hybrid solver once and print the archive");
  add_problem_flags(solve);

  auto* experiment = app.add_subcommand("experiment", "Repeat the solver and report success rates");
  add_problem_flags(experiment);
  experiment->add_option("--runs", o.runs, "Number of independent runs (default 20)");
  experiment->add_option("--format", o.format, "csv or json");
  experiment->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "Check known solutions against the lattice oracle");
  verify->add_option("--problem", o.problem, "Benchmark problem: p1, p2 or p3");
  verify->add_option("--format", o.verify_format, "text or json");
  verify->add_option("--out", o.out, "Output file (default stdout)");

  auto* rank = app.add_subcommand("rank", "TOPSIS ranking of a CSV decision matrix");
  rank->add_option("--input", o.input, "CSV file with a header row (default stdin)");
  rank->add_option("--senses", o.senses, "Comma-separated cost|benefit per column (default cost)");
  rank->add_option("--weights", o.weights, "Comma-separated weights summing to 1 (default uniform)");
  rank->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (experiment->parsed()) return cmd_experiment(o);
    if (verify->parsed()) return cmd_verify(o);
    if (rank->parsed()) return cmd_rank(o);
  } catch (const intmo::harness::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

// Command-line front end for the requirement prioritisation pipeline.
//
// Exit codes: 0 success, 1 usage or validation error, 2 runtime error.

#include <algorithm>
#include <filesystem>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "stpaprio/csv.hpp"
#include "stpaprio/dataset.hpp"
#include "stpaprio/pipeline.hpp"
#include "stpaprio/report.hpp"

namespace fs = std::filesystem;
using namespace stpaprio;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string out_dir;
  std::uint64_t seed = 42;
  std::uint64_t seed2 = 0;
  int iterations = 1000;
  double perturbation = 0.10;
  std::string mode = "uniform-pct";
  std::string weights;
  bool all_bands = false;
  std::string format = "text";
  int workers = 0;

  // Options are registered once per subcommand; only one subcommand parses.
  std::map<std::string, std::vector<CLI::Option*>> registered;

  void track(const std::string& flag, CLI::Option* opt) { registered[flag].push_back(opt); }
  bool given(const std::string& flag) const {
    auto it = registered.find(flag);
    if (it == registered.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [](auto* opt) { return opt->count() > 0; });
  }
};

void add_common(CLI::App* cmd, Options& o, bool simulation) {
  cmd->add_option("--input", o.input, "Dataset directory (ucas.csv + requirements.csv) or .json file")
      ->required()
      ->check(CLI::ExistingPath);
  cmd->add_option("--format", o.format, "Table format on standard output: text, csv or json");
  cmd->add_flag("--all-bands", o.all_bands, "Analyse requirements of every UCA band (disable the P1/P2 pre-filter)");
  if (!simulation) return;
  cmd->add_option("--out-dir", o.out_dir, "Directory for generated files");
  o.track("--seed", cmd->add_option("--seed", o.seed, "Random seed (default 42)"));
  o.track("--iterations", cmd->add_option("--iterations", o.iterations, "Monte-Carlo iterations (default 1000)"));
  o.track("--perturbation",
          cmd->add_option("--perturbation", o.perturbation, "Relative perturbation p (default 0.10)"));
  o.track("--mode", cmd->add_option("--mode", o.mode, "Sampling mode: uniform-pct, triangular or combined"));
  o.track("--weights", cmd->add_option("--weights", o.weights, "w_Type,w_Likelihood,w_Time,w_Cost"));
  cmd->add_option("--workers", o.workers, "Worker threads for the simulation (0 = all)");
}

Weights parse_weights(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("--weights: '{}' is not a number", item));
    }
  }
  if (values.size() != 4) throw UsageError("--weights: expected four comma-separated values");
  for (double v : values) {
    if (v < 0.0) throw UsageError("--weights: weights must be non-negative");
  }
  return {values[0], values[1], values[2], values[3]};
}

AnalysisConfig build_config(const Options& o, const Dataset& dataset) {
  AnalysisConfig config;
  dataset.config.apply(config);
  if (o.given("--seed")) config.seed = o.seed;
  if (o.given("--iterations")) {
    if (o.iterations < 1) throw UsageError("--iterations: iterations must be ≥ 1");
    config.iterations = o.iterations;
  }
  if (o.given("--perturbation")) {
    if (!(o.perturbation >= 0.0 && o.perturbation < 1.0)) {
      throw UsageError("--perturbation: perturbation must be in [0, 1)");
    }
    config.perturbation = o.perturbation;
  }
  if (o.given("--mode")) {
    try {
      config.mode = parse_sampling_mode(o.mode);
    } catch (const Error&) {
      throw UsageError(fmt::format("--mode: '{}' is not one of uniform-pct, triangular, combined", o.mode));
    }
  }
  if (o.given("--weights")) config.weights = parse_weights(o.weights);
  if (o.all_bands) config.prefilter = false;
  if (o.workers < 0) throw UsageError("--workers: must be ≥ 0");
  config.workers = o.workers;
  if (auto warning = config.validate()) std::cerr << "warning: " << *warning << "\n";
  return config;
}

// Renders a table as aligned text, CSV or a JSON array of objects.
void print_table(const std::string& format, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  if (format == "csv") {
    std::cout << csv::join_row(header) << "\n";
    for (const auto& r : rows) std::cout << csv::join_row(r) << "\n";
    return;
  }
  if (format == "json") {
    auto out = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
      out.push_back(std::move(obj));
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += fmt::format("{:<{}}", cells[i], width[i]);
      if (i + 1 < cells.size()) s += "  ";
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    std::cout << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string num(double v, int digits = 4) { return fmt::format("{:.{}f}", v, digits); }

fs::path out_path(const Options& o, const char* name) {
  fs::path dir = o.out_dir.empty() ? fs::path("out") : fs::path(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  return dir / name;
}

void check_format(const Options& o) {
  if (o.format != "text" && o.format != "csv" && o.format != "json") {
    throw UsageError(fmt::format("--format: '{}' is not one of text, csv, json", o.format));
  }
}

int cmd_validate(const Options& o) {
  const auto dataset = load_dataset(o.input);
  AnalysisConfig config;
  dataset.config.apply(config);
  if (auto warning = config.validate()) std::cerr << "warning: " << *warning << "\n";
  std::cout << fmt::format("{}: {} UCAs, {} requirements, valid\n", o.input, dataset.ucas.size(),
                           dataset.requirements.size());
  return 0;
}

int cmd_rank_ucas(const Options& o) {
  const auto dataset = load_dataset(o.input);
  const auto ucas = rank_ucas(dataset.ucas);
  std::vector<std::vector<std::string>> rows;
  for (const auto& u : ucas) {
    rows.push_back({u.uca_id, num(u.ej, 2), num(u.sif, 2), num(u.inverted_ej), num(u.priority_score, 2),
                    to_string(u.band)});
  }
  print_table(o.format, {"uca_id", "ej", "sif", "inverted_ej", "sif_x_inverted_ej", "band"}, rows);
  if (!o.out_dir.empty()) {
    const auto path = out_path(o, "uca_matrix.svg");
    emit_uca_matrix(uca_matrix(ucas), path);
    std::cerr << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_score(const Options& o) {
  const auto dataset = load_dataset(o.input);
  const auto config = build_config(o, dataset);
  const auto reqs = select_requirements(dataset, rank_ucas(dataset.ucas, config.ej_ceiling), config);
  const auto outcomes = simulate(reqs, config);
  const auto positions = final_positions(outcomes);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < reqs.size(); ++k) {
    const auto& s = outcomes[k];
    rows.push_back({s.req_id, num(saw(reqs[k].assessment, config)), num(s.mean_rank), num(s.rank_sigma),
                    num(s.requirement_score), num(s.ci_upper), std::to_string(positions[k])});
  }
  print_table(o.format, {"req_id", "saw", "mean_rank", "rank_sigma", "requirement_score", "ci_upper", "final_rank"},
              rows);
  return 0;
}

int cmd_sensitivity(const Options& o) {
  const auto dataset = load_dataset(o.input);
  const auto config = build_config(o, dataset);
  const auto reqs = select_requirements(dataset, rank_ucas(dataset.ucas, config.ej_ceiling), config);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : sensitivity_oat(reqs, config)) {
    rows.push_back({r.req_id, std::string(to_string(r.factor)), num(r.rank_at_mode, 1), num(r.rank_at_lower, 1),
                    num(r.rank_at_upper, 1), num(r.max_shift, 1)});
  }
  print_table(o.format, {"req_id", "factor", "rank_at_mode", "rank_at_lower", "rank_at_upper", "max_shift"}, rows);
  return 0;
}

int cmd_prioritise(const Options& o) {
  const auto dataset = load_dataset(o.input);
  const auto config = build_config(o, dataset);
  const std::uint64_t second = o.given("--seed2") ? o.seed2 : config.seed + 1;
  const auto result = run_pipeline(dataset, config, second);

  const auto report = out_path(o, "report.csv");
  const auto results = out_path(o, "results.json");
  const auto matrix = out_path(o, "matrix.svg");
  const auto diagram = out_path(o, "rank_shift.svg");
  emit_report(result.rows, report);
  emit_results(result, results);
  emit_matrix(result.prioritisation.matrix, matrix);
  emit_rank_shift(result.shifts, diagram, config.shift_flag);
  for (const auto& p : {report, results, matrix, diagram}) std::cout << p.string() << "\n";
  return 0;
}

int cmd_rank_shift(const Options& o) {
  const auto dataset = load_dataset(o.input);
  const auto config = build_config(o, dataset);
  const std::uint64_t second = o.given("--seed2") ? o.seed2 : config.seed + 1;
  const auto reqs = select_requirements(dataset, rank_ucas(dataset.ucas, config.ej_ceiling), config);
  auto other = config;
  other.seed = second;
  const auto shifts = rank_shift(simulate(reqs, config), simulate(reqs, other), config.shift_flag);
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : shifts) {
    rows.push_back({s.req_id, std::to_string(s.rank_a), std::to_string(s.rank_b), std::to_string(s.shift),
                    s.flagged ? "yes" : "no"});
  }
  print_table(o.format, {"req_id", "rank_seed_a", "rank_seed_b", "shift", "flagged"}, rows);
  if (!o.out_dir.empty()) {
    const auto path = out_path(o, "rank_shift.svg");
    emit_rank_shift(shifts, path, config.shift_flag);
    std::cerr << "wrote " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritise STPA safety requirements"};
  app.require_subcommand(1);

  Options o;
  auto* validate = app.add_subcommand("validate", "Check a dataset against the schema");
  add_common(validate, o, false);
  auto* rank = app.add_subcommand("rank-ucas", "UCA priority scores and bands");
  add_common(rank, o, false);
  rank->add_option("--out-dir", o.out_dir, "Write uca_matrix.svg here");
  auto* score = app.add_subcommand("score", "SAW scores and Monte-Carlo rank statistics");
  add_common(score, o, true);
  auto* sens = app.add_subcommand("sensitivity", "One-at-a-time sensitivity table");
  add_common(sens, o, true);
  auto* prio = app.add_subcommand("prioritise", "Full pipeline: report, results, matrix and rank-shift diagram");
  add_common(prio, o, true);
  auto* shift = app.add_subcommand("rank-shift", "Compare final ranks of two seeds");
  add_common(shift, o, true);
  for (auto* cmd : {prio, shift}) {
    o.track("--seed2", cmd->add_option("--seed2", o.seed2, "Seed of the second run (default seed + 1)"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    check_format(o);
    if (validate->parsed()) return cmd_validate(o);
    if (rank->parsed()) return cmd_rank_ucas(o);
    if (score->parsed()) return cmd_score(o);
    if (sens->parsed()) return cmd_sensitivity(o);
    if (prio->parsed()) return cmd_prioritise(o);
    if (shift->parsed()) return cmd_rank_shift(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

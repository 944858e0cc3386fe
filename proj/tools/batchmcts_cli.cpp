// batchmcts: match harness, parameter sweeps, throughput model and the
// synthetic minimax oracle.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "batchmcts/config.hpp"
#include "batchmcts/engine.hpp"
#include "batchmcts/errors.hpp"
#include "batchmcts/match.hpp"
#include "batchmcts/synthetic.hpp"
#include "batchmcts/wire_client.hpp"

namespace {

using namespace batchmcts;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEngine = 3;
constexpr int kExitOracle = 4;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<MatchReport>& reports) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << report_table(reports, TableFormat::kCsv);
}

void print_reports(const std::vector<MatchReport>& reports) {
  std::cout << report_table(reports, TableFormat::kMarkdown) << '\n';
  nlohmann::json all = nlohmann::json::array();
  for (const MatchReport& r : reports) all.push_back(to_json(r));
  std::cout << all.dump(2) << '\n';
}

int run_throughput(double fixed_ms, double per_state_ms, const std::string& sizes_text) {
  const LatencyModel model{fixed_ms, per_state_ms};
  if (fixed_ms < 0 || per_state_ms < 0 || fixed_ms + per_state_ms <= 0) {
    throw ConfigError("latency costs must be >= 0 and not both zero");
  }
  std::printf("%-6s %20s %22s\n", "size", "batches_per_second", "inferences_per_second");
  for (const std::string& s : split_list(sizes_text)) {
    const int size = std::stoi(s);
    if (size < 1) throw ConfigError("batch sizes must be >= 1");
    const double inferences = throughput(model, size);
    std::printf("%-6d %20.2f %22.2f\n", size, inferences / size, inferences);
  }
  return kExitOk;
}

int run_oracle(int branching, int depth, std::uint64_t seed, int budget, int batch_size) {
  if (budget < batch_size || batch_size < 1) throw ConfigError("budget must be >= batch size >= 1");
  const SyntheticGame root(branching, depth, seed);
  SearchConfig cfg;
  cfg.batch_size = batch_size;
  cfg.num_batches = budget / batch_size;
  UniformEvaluator<SyntheticGame> uniform;
  Engine<SyntheticGame> engine(cfg, uniform);
  const Move searched = engine.choose_move(root);
  const NegamaxResult exact = synthetic_negamax(root);
  std::printf("engine move %d, minimax move %d (minimax value %.6f)\n", searched, exact.best_move, exact.value);
  return searched == exact.best_move ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch MCTS match harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  auto* match = app.add_subcommand("match", "Play a match described by a JSON config");
  match->add_option("--config", config_path, "Match config file")->required();
  match->add_option("--out", out_path, "Write the report table as CSV");

  std::string param;
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "One match per value of a search parameter (engine A)");
  sweep_cmd->add_option("--config", config_path, "Match config file")->required();
  sweep_cmd->add_option("--param", param, "SearchConfig field name")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out", out_path, "Write the report table as CSV");

  double fixed_ms = 26.0;
  double per_state_ms = 0.28;
  std::string sizes = "1,2,4,8,16,32,64,128";
  auto* tput = app.add_subcommand("throughput", "Inferences per second under the affine latency model");
  tput->add_option("--a", fixed_ms, "Fixed cost per batch (ms)");
  tput->add_option("--c", per_state_ms, "Cost per state (ms)");
  tput->add_option("--sizes", sizes, "Comma-separated batch sizes");

  std::string game = "synthetic";
  int branching = 3;
  int depth = 4;
  std::uint64_t seed = 1;
  int budget = 2048;
  int batch_size = 32;
  auto* oracle = app.add_subcommand("oracle", "Compare the engine's move with exhaustive negamax");
  oracle->add_option("--game", game, "Game (synthetic)")->check(CLI::IsMember({"synthetic"}));
  oracle->add_option("--b", branching, "Branching factor");
  oracle->add_option("--d", depth, "Depth");
  oracle->add_option("--seed", seed, "Leaf hash seed");
  oracle->add_option("--budget", budget, "Evaluations");
  oracle->add_option("--batch-size", batch_size, "Batch size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*match) {
      const MatchSpec spec = load_match_spec(config_path);
      const std::vector<MatchReport> reports{run_match(spec)};
      print_reports(reports);
      write_csv(out_path, reports);
    } else if (*sweep_cmd) {
      const MatchSpec spec = load_match_spec(config_path);
      const std::vector<std::string> list = split_list(values);
      const std::vector<MatchReport> reports = batchmcts::sweep(spec, param, list);
      print_reports(reports);
      write_csv(out_path, reports);
    } else if (*tput) {
      return run_throughput(fixed_ms, per_state_ms, sizes);
    } else if (*oracle) {
      return run_oracle(branching, depth, seed, budget, batch_size);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "engine failure: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}

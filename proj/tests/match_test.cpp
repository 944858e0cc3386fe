#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <sstream>

#include "batchmcts/errors.hpp"
#include "batchmcts/match.hpp"

using namespace batchmcts;

namespace {

MatchSpec quick_match(int games) {
  MatchSpec spec;
  spec.game.size = 5;
  spec.num_games = games;
  spec.seed = 42;
  spec.engine_a.label = "a";
  spec.engine_a.search = sequential_config(16);
  spec.engine_b.label = "b";
  spec.engine_b.search = sequential_config(16);
  return spec;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(field);
      field.clear();
    } else if (ch == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
    } else {
      field += ch;
    }
  }
  return rows;
}

MatchReport fake_report(std::string label, double winrate) {
  MatchReport r;
  r.label = std::move(label);
  r.config_a.vl = 3;
  r.config_a.num_batches = 8;
  r.config_a.batch_size = 32;
  r.num_games = 400;
  r.winrate_a = winrate;
  r.std_error = 0.02312;
  r.a.moves = 4;
  r.a.nodes = 1000;
  r.a.forwards = 900;
  r.a.batches = 32;
  return r;
}

}  // namespace

TEST(Match, SelfPlayIsExactlyEven) {
  const MatchReport r = run_match(quick_match(12));
  EXPECT_EQ(r.wins_a + r.wins_b + r.draws, 12);
  EXPECT_EQ(r.draws, 0);
  EXPECT_EQ(r.winrate_a, 0.5);
  EXPECT_DOUBLE_EQ(r.std_error, std::sqrt(0.25 / 12));
}

TEST(Match, PairsShareOpeningsAndSwapColours) {
  MatchSpec spec = quick_match(8);
  spec.opening_plies = 3;
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(random_opening(spec, 2 * k), random_opening(spec, 2 * k + 1));
    EXPECT_EQ(random_opening(spec, 2 * k).size(), 3u);
  }
  EXPECT_NE(random_opening(spec, 0), random_opening(spec, 2));
  const GameRecord even = play_game(spec, 4);
  const GameRecord odd = play_game(spec, 5);
  EXPECT_TRUE(even.a_first);
  EXPECT_FALSE(odd.a_first);
  EXPECT_EQ(even.moves.substr(0, 8), odd.moves.substr(0, 8));
  spec.seed = 43;
  EXPECT_NE(random_opening(spec, 0), random_opening(quick_match(8), 0));
}

TEST(Match, ParallelEqualsSerial) {
  MatchSpec spec = quick_match(10);
  spec.engine_a.search = SearchConfig{};
  spec.engine_a.search.num_batches = 4;
  spec.engine_a.search.batch_size = 8;
  spec.engine_a.evaluator.latency = LatencyModel{};
  spec.engine_b.evaluator.kind = "uniform";
  const MatchReport serial = run_match_serial(spec);
  for (int threads : {1, 3}) {
    omp_set_num_threads(threads);
    const MatchReport parallel = run_match(spec);
    EXPECT_EQ(parallel.wins_a, serial.wins_a);
    EXPECT_EQ(parallel.wins_b, serial.wins_b);
    EXPECT_EQ(parallel.a.nodes, serial.a.nodes);
    EXPECT_EQ(parallel.a.forwards, serial.a.forwards);
    EXPECT_EQ(parallel.b.descents, serial.b.descents);
    EXPECT_EQ(parallel.a.simulated_ms, serial.a.simulated_ms);
    const std::vector<MatchReport> a{serial};
    const std::vector<MatchReport> b{parallel};
    EXPECT_EQ(report_table(a, TableFormat::kCsv), report_table(b, TableFormat::kCsv));
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST(Match, AggregatesPerEngine) {
  MatchSpec spec = quick_match(2);
  spec.engine_a.evaluator.latency = LatencyModel{10.0, 1.0};
  const MatchReport r = run_match(spec);
  EXPECT_GT(r.a.moves, 0);
  EXPECT_GT(r.b.moves, 0);
  EXPECT_LE(r.a.forwards, 16 * r.a.moves);
  EXPECT_DOUBLE_EQ(r.a.inferences_per_batch(), 1.0);
  EXPECT_DOUBLE_EQ(r.a.simulated_ms, 11.0 * static_cast<double>(r.a.batches));
  EXPECT_EQ(r.b.mean_move_ms(), 0.0);
  EXPECT_GE(r.a.descents_per_forward(), 1.0);
}

TEST(Match, SummarizeCountsDraws) {
  MatchSpec spec = quick_match(4);
  std::vector<GameRecord> games(4);
  games[0] = {true, Player::kFirst, "", {}, {}};
  games[1] = {false, Player::kFirst, "", {}, {}};
  games[2] = {true, std::nullopt, "", {}, {}};
  games[3] = {false, Player::kSecond, "", {}, {}};
  const MatchReport r = summarize(spec, games);
  EXPECT_EQ(r.wins_a, 2);
  EXPECT_EQ(r.wins_b, 1);
  EXPECT_EQ(r.draws, 1);
  EXPECT_DOUBLE_EQ(r.winrate_a, 0.625);
}

TEST(Match, EngineFailureNamesTheGame) {
  MatchSpec spec = quick_match(2);
  spec.engine_b.evaluator.kind = "remote";
  spec.engine_b.evaluator.command = {"/bin/true"};
  EXPECT_ANY_THROW(run_match(spec));
}

TEST(ReportTable, CsvRoundTrips) {
  const std::vector<MatchReport> reports{fake_report("VirtualMean", 0.31), fake_report("vl=2, \"loss\"", 0.7925)};
  const auto rows = parse_csv(report_table(reports, TableFormat::kCsv));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"config", "vl", "B", "batch", "nodes", "inference", "winrate", "stderr"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"VirtualMean", "3", "8", "32", "250.00", "28.12", "0.3100", "0.0231"}));
  EXPECT_EQ(rows[2][0], "vl=2, \"loss\"");
  EXPECT_EQ(rows[2][6], "0.7925");
}

TEST(ReportTable, SequentialRowsShowBudget) {
  MatchReport r = fake_report("seq", 0.5);
  r.config_a = sequential_config(64);
  const auto rows = parse_csv(report_table(std::vector<MatchReport>{r}, TableFormat::kCsv));
  EXPECT_EQ(rows[1][2], "64");
  EXPECT_EQ(rows[1][3], "1");
}

TEST(ReportTable, Markdown) {
  const std::string md = report_table(std::vector<MatchReport>{fake_report("vm", 0.31)}, TableFormat::kMarkdown);
  std::istringstream in(md);
  std::string header;
  std::string rule;
  std::string row;
  std::getline(in, header);
  std::getline(in, rule);
  std::getline(in, row);
  EXPECT_EQ(header, "| config | vl | B | batch | nodes | inference | winrate | stderr |");
  EXPECT_EQ(rule.substr(0, 7), "| --- |");
  EXPECT_EQ(row, "| vm | 3 | 8 | 32 | 250.00 | 28.12 | 0.3100 | 0.0231 |");
}

TEST(Sweep, ValidatesBeforePlaying) {
  const MatchSpec spec = quick_match(2);
  const std::vector<std::string> values{"1", "2"};
  EXPECT_THROW(sweep(spec, "depth", values), ConfigError);
  EXPECT_THROW(sweep(spec, "vl", std::vector<std::string>{"1", "0"}), ConfigError);
  EXPECT_TRUE(sweep(spec, "vl", std::vector<std::string>{}).empty());
}

TEST(Sweep, LabelsEachVariant) {
  const auto reports = sweep(quick_match(2), "c", std::vector<std::string>{"0.2", "0.4"});
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].label, "a c=0.2");
  EXPECT_EQ(reports[1].config_a.c, 0.4);
  EXPECT_EQ(reports[0].num_games, 2);
}

#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "batchmcts/bandit.hpp"
#include "batchmcts/errors.hpp"
#include "batchmcts/evaluation.hpp"
#include "batchmcts/search_config.hpp"
#include "batchmcts/search_stats.hpp"
#include "batchmcts/tree.hpp"

namespace batchmcts {

// Sequential PUCT on a DAG: statistics are stored per position in the
// transposition table and shared by every path reaching it. Each descent
// that reaches a new position evaluates it (one state per evaluator call).
template <Game G>
class PucdSearch {
 public:
  PucdSearch(SearchConfig config, Evaluator<G>& evaluator)
      : config_(std::move(config)), evaluator_(evaluator) {
    config_.validate();
  }

  void set_observer(SearchObserver observer) { observer_ = std::move(observer); }
  void set_latency_model(std::optional<LatencyModel> model) { latency_ = model; }
  const SearchStats& stats() const { return stats_; }
  std::size_t table_size() const { return table_.size(); }

  // Searches until the next descent would need evaluation number
  // budget() + 1, then returns the most visited root move.
  Move get_move(const G& root) {
    BATCHMCTS_CHECK(!root.is_terminal(), "get_move on a terminal position");
    table_.clear();
    stats_ = {};
    root_ = root;
    int without_forward = 0;
    for (;;) {
      const std::int64_t before = stats_.forwards;
      if (descend().is_unknown()) break;
      ++stats_.descents;
      if (stats_.forwards != before) {
        without_forward = 0;
      } else if (++without_forward >= config_.max_descents) {
        ++stats_.capped_loops;
        break;
      }
    }
    const auto it = table_.find(root.key());
    if (it == table_.end()) throw SearchError("root position was never evaluated");
    stats_.main_nodes = stats_.final_nodes = static_cast<std::int64_t>(table_.size());
    const NodeStats& node = it->second.node;
    return node.moves[rank_by_visits(node, TreeSide::kMain).best].move;
  }

  std::vector<std::int64_t> root_visits() const {
    std::vector<std::int64_t> visits;
    const auto it = table_.find(root_->key());
    if (it == table_.end()) return visits;
    for (const MoveStats& m : it->second.node.moves) visits.push_back(m.at(TreeSide::kMain).visits);
    return visits;
  }

 private:
  struct Entry {
    NodeStats node;
    // Edge that first reached the position; reaching it through another
    // edge is a transposition.
    StateKey parent;
    std::size_t parent_slot;
  };

  DescentResult descend() {
    G state = *root_;
    path_.clear();
    StateKey parent{};
    std::size_t parent_slot = 0;
    DescentResult result = DescentResult::Unknown();
    for (;;) {
      if (state.is_terminal()) {
        result = DescentResult::Value(state.terminal_value());
        break;
      }
      const StateKey key = state.key();
      auto it = table_.find(key);
      if (it == table_.end()) {
        if (stats_.forwards >= config_.budget()) break;
        result = DescentResult::Value(expand(state, key, parent, parent_slot));
        break;
      }
      if (!path_.empty() && (it->second.parent != parent || it->second.parent_slot != parent_slot)) {
        ++stats_.transposition_hits;
      }
      NodeStats& node = it->second.node;
      const std::size_t slot = select_move(node, TreeSide::kMain, config_);
      path_.emplace_back(&node, slot);
      BATCHMCTS_CHECK(static_cast<int>(path_.size()) <= root_->max_plies() - root_->ply(),
                      "descent deeper than the game allows");
      parent = key;
      parent_slot = slot;
      state = state.play(node.moves[slot].move);
    }
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
      result = result.negated();
      update_statistics(*it->first, TreeSide::kMain, it->second, result);
    }
    return result;
  }

  double expand(const G& state, const StateKey& key, const StateKey& parent, std::size_t parent_slot) {
    std::vector<Evaluation> evals = evaluator_.evaluate_batch(std::span<const G>(&state, 1));
    BATCHMCTS_CHECK(evals.size() == 1, "evaluator returned a misaligned batch");
    const std::vector<Move> moves = state.legal_moves();
    Evaluation e = validate_evaluation(std::move(evals[0]), moves.size());
    Entry entry{{}, parent, parent_slot};
    entry.node.key = key;
    entry.node.in_main = true;
    entry.node.at(TreeSide::kMain) = EdgeStats{1, e.value};
    entry.node.moves.resize(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
      entry.node.moves[i].move = moves[i];
      entry.node.moves[i].prior = e.priors[i];
    }
    table_.emplace(key, std::move(entry));
    stats_.forwards += 1;
    stats_.batches += 1;
    if (latency_) stats_.simulated_ms += latency_->latency_ms(1);
    if (observer_) observer_({SearchEvent::Kind::kBatchEvaluated, 1});
    return e.value;
  }

  SearchConfig config_;
  Evaluator<G>& evaluator_;
  std::optional<LatencyModel> latency_;
  SearchObserver observer_;
  std::optional<G> root_;
  // Node references stay valid across rehashing.
  std::unordered_map<StateKey, Entry, StateKeyHash> table_;
  std::vector<std::pair<NodeStats*, std::size_t>> path_;
  SearchStats stats_;
};

}  // namespace batchmcts

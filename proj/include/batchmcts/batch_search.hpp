#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "batchmcts/bandit.hpp"
#include "batchmcts/batch_buffer.hpp"
#include "batchmcts/errors.hpp"
#include "batchmcts/evaluation.hpp"
#include "batchmcts/search_config.hpp"
#include "batchmcts/search_stats.hpp"
#include "batchmcts/transposition_table.hpp"
#include "batchmcts/tree.hpp"

namespace batchmcts {

using EvaluatedBatch = std::vector<std::pair<StateKey, TranspositionEntry>>;

// Budget bookkeeping for the Second Move redirect, in evaluations.
struct RootContext {
  int budget = 0;
  int used = 0;
};

// Batched PUCT that replays sequential PUCT on a main tree while a lazily
// copied batch tree, penalised by virtual loss or Virtual Mean, assembles
// the next batch of states for the evaluator. Evaluations are cached in a
// transposition table; tree nodes are created only when a descent reaches a
// state whose evaluation is already known.
//
// Each get_move() starts from an empty tree and table.
template <Game G>
class BatchSearch {
 public:
  BatchSearch(SearchConfig config, Evaluator<G>& evaluator)
      : config_(effective(config)), evaluator_(evaluator) {
    config_.validate();
    BATCHMCTS_CHECK(config_.baseline != Baseline::kPucd, "use PucdSearch for the PUCD baseline");
  }

  void set_observer(SearchObserver observer) { observer_ = std::move(observer); }
  void set_latency_model(std::optional<LatencyModel> model) { latency_ = model; }

  const SearchConfig& config() const { return config_; }
  const SearchTree& tree() const { return tree_; }
  const TranspositionTable& table() const { return table_; }
  const BatchBuffer<G>& buffer() const { return buffer_; }
  const SearchStats& stats() const { return stats_; }

  // Runs num_batches rounds of {get_batch, evaluate, put_batch}, then the
  // optional Last Iteration, and returns the chosen root move.
  Move get_move(const G& root) {
    BATCHMCTS_CHECK(!root.is_terminal(), "get_move on a terminal position");
    reset(root);
    const int budget = config_.budget();
    for (int i = 0; i < config_.num_batches; ++i) {
      const RootContext ctx{budget, i * config_.batch_size};
      const RootContext* redirect = config_.second_move ? &ctx : nullptr;
      get_batch(redirect);
      const EvaluatedBatch results = evaluate_buffer();
      put_batch(results, redirect);
    }
    if (!tree_.contains(tree_.root(), TreeSide::kMain)) {
      throw SearchError("root position was never evaluated");
    }
    TreeSide side = TreeSide::kMain;
    if (config_.last_iteration_u > 0) {
      const RootContext ctx{budget, budget};
      last_iteration(config_.second_move ? &ctx : nullptr);
      side = TreeSide::kBatch;
    }
    stats_.main_nodes = static_cast<std::int64_t>(tree_.main_node_count());
    stats_.final_nodes = static_cast<std::int64_t>(
        side == TreeSide::kBatch ? tree_.batch_node_count() : tree_.main_node_count());
    return final_move(side);
  }

  void reset(const G& root) {
    root_ = root;
    tree_.clear();
    table_.clear();
    buffer_.reset(static_cast<std::size_t>(config_.batch_size));
    stats_ = {};
  }

  // One root-to-leaf descent of the main tree (build_batch == false) or the
  // batch tree. The result is in the root's side-to-move perspective.
  DescentResult descend(bool build_batch, const RootContext* ctx = nullptr) {
    return descend(build_batch, ctx, config_.vl, true);
  }

  DescentResult descend(bool build_batch, const RootContext* ctx, int penalty_visits, bool enqueue) {
    const TreeSide side = build_batch ? TreeSide::kBatch : TreeSide::kMain;
    G state = *root_;
    path_.clear();
    std::int32_t index = tree_.root();
    DescentResult result = DescentResult::Unknown();
    for (;;) {
      if (state.is_terminal()) {
        result = DescentResult::Value(state.terminal_value());
        break;
      }
      if (!tree_.contains(index, side)) {
        const StateKey key = state.key();
        const TranspositionEntry* entry = table_.find(key);
        if (entry == nullptr) {
          if (build_batch && enqueue) buffer_.try_add(key, state);
          break;
        }
        const std::vector<Move> moves = state.legal_moves();
        index = tree_.insert(index, key, *entry, moves, side);
        if (path_.empty()) {
          tree_.set_root(index);
        } else {
          tree_.node(path_.back().first).moves[path_.back().second].child = index;
        }
        result = DescentResult::Value(entry->value);
        break;
      }
      NodeStats& node = tree_.touch(index, side);
      std::size_t slot = select_move(node, side, config_);
      if (ctx != nullptr && path_.empty()) {
        slot = second_move_redirect(node, side, ctx->budget, ctx->used, slot);
      }
      path_.emplace_back(index, slot);
      BATCHMCTS_CHECK(static_cast<int>(path_.size()) <= root_->max_plies() - root_->ply(),
                      "descent deeper than the game allows");
      index = node.moves[slot].child;
      state = state.play(node.moves[slot].move);
    }

    for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
      result = result.negated();
      NodeStats& node = tree_.node(it->first);
      if (build_batch) {
        update_statistics_get(node, side, it->second, result, config_.penalty, penalty_visits);
      } else {
        update_statistics(node, side, it->second, result);
      }
    }
    return result;
  }

  // Fills the buffer with up to batch_size distinct unevaluated states,
  // running at most max_descents batch-tree descents.
  void get_batch(const RootContext* ctx = nullptr) {
    buffer_.clear();
    tree_.begin_generation();
    for (int i = 0; !buffer_.full() && i < config_.max_descents; ++i) descend(true, ctx);
  }

  // Sends the buffer to the evaluator. An empty buffer (every reachable
  // state already evaluated) skips the call.
  EvaluatedBatch evaluate_buffer() {
    EvaluatedBatch results;
    if (buffer_.empty()) return results;
    const std::span<const G> states = buffer_.states();
    std::vector<Evaluation> evals = evaluator_.evaluate_batch(states);
    BATCHMCTS_CHECK(evals.size() == states.size(), "evaluator returned " +
                                                       std::to_string(evals.size()) + " results for " +
                                                       std::to_string(states.size()) + " states");
    results.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      BATCHMCTS_CHECK(!table_.contains(buffer_.keys()[i]), "batch contains an evaluated state");
      Evaluation e = validate_evaluation(std::move(evals[i]), states[i].legal_moves().size());
      results.emplace_back(buffer_.keys()[i], TranspositionEntry{e.value, std::move(e.priors)});
    }
    const auto n = static_cast<std::int64_t>(states.size());
    stats_.forwards += n;
    stats_.batches += 1;
    if (latency_) stats_.simulated_ms += latency_->latency_ms(static_cast<int>(n));
    if (observer_) observer_({SearchEvent::Kind::kBatchEvaluated, n});
    return results;
  }

  // Stores the results and replays main-tree descents until one stops on an
  // unevaluated state (at most max_descents). Returns the number of
  // value-returning descents.
  int put_batch(std::span<const std::pair<StateKey, TranspositionEntry>> results,
                const RootContext* ctx = nullptr) {
    for (const auto& [key, entry] : results) table_.insert(key, entry);
    int counted = 0;
    bool stopped = false;
    for (int i = 0; i < config_.max_descents; ++i) {
      if (descend(false, ctx).is_unknown()) {
        stopped = true;
        break;
      }
      ++counted;
    }
    if (!stopped) ++stats_.capped_loops;
    stats_.descents += counted;
    if (observer_) observer_({SearchEvent::Kind::kPutBatch, counted});
#ifndef NDEBUG
    std::string failure;
    BATCHMCTS_CHECK(check_conservation(&failure), failure);
#endif
    return counted;
  }

  // Keeps descending a fresh batch tree with penalty vll, never calling the
  // evaluator, until `last_iteration_u` descents have ended on unevaluated
  // states. Descents reaching evaluated states the main tree never used
  // add their values. Capped at max_descents + U descents.
  void last_iteration(const RootContext* ctx = nullptr) {
    buffer_.clear();
    tree_.begin_generation();
    const int cap = config_.max_descents + config_.last_iteration_u;
    int unknown = 0;
    int i = 0;
    for (; unknown < config_.last_iteration_u && i < cap; ++i) {
      if (descend(true, ctx, config_.vll, false).is_unknown()) ++unknown;
    }
    if (unknown < config_.last_iteration_u) ++stats_.capped_loops;
  }

  // Most visited root move on `side`; with Second Move, the runner-up wins
  // if its mean is strictly higher.
  Move final_move(TreeSide side) {
    BATCHMCTS_CHECK(tree_.contains(tree_.root(), side), "root not in tree");
    const NodeStats& root = tree_.touch(tree_.root(), side);
    const RootRanking r = rank_by_visits(root, side);
    if (config_.second_move && r.has_second) {
      const EdgeStats& best = root.moves[r.best].at(side);
      const EdgeStats& second = root.moves[r.second].at(side);
      if (best.visits > 0 && second.visits > 0 && second.mean() > best.mean()) {
        return root.moves[r.second].move;
      }
    }
    return root.moves[r.best].move;
  }

  std::vector<std::int64_t> root_visits(TreeSide side) {
    std::vector<std::int64_t> visits;
    if (!tree_.contains(tree_.root(), side)) return visits;
    const NodeStats& root = tree_.touch(tree_.root(), side);
    for (const MoveStats& m : root.moves) visits.push_back(m.at(side).visits);
    return visits;
  }

  // Main side: visits == 1 + sum of move visits, and value_sum equals the
  // node's own evaluation plus the move value sums.
  bool check_conservation(std::string* failure = nullptr) const {
    for (std::size_t i = 0; i < tree_.arena_size(); ++i) {
      const NodeStats& n = tree_.node(static_cast<std::int32_t>(i));
      if (!n.in_main) continue;
      std::int64_t visits = 1;
      const TranspositionEntry* entry = table_.find(n.key);
      double sum = entry != nullptr ? entry->value : 0.0;
      for (const MoveStats& m : n.moves) {
        visits += m.at(TreeSide::kMain).visits;
        sum += m.at(TreeSide::kMain).value_sum;
      }
      const EdgeStats& self = n.at(TreeSide::kMain);
      const bool ok = entry != nullptr && visits == self.visits &&
                      std::abs(sum - self.value_sum) <= 1e-9 * static_cast<double>(visits);
      if (!ok) {
        if (failure) {
          *failure = "node " + std::to_string(i) + " visits " + std::to_string(self.visits) +
                     " expected " + std::to_string(visits);
        }
        return false;
      }
    }
    return true;
  }

 private:
  static SearchConfig effective(SearchConfig config) {
    if (config.baseline == Baseline::kSequentialTree) {
      config.num_batches = config.budget();
      config.batch_size = 1;
    }
    return config;
  }

  SearchConfig config_;
  Evaluator<G>& evaluator_;
  std::optional<LatencyModel> latency_;
  SearchObserver observer_;
  std::optional<G> root_;
  SearchTree tree_;
  TranspositionTable table_;
  BatchBuffer<G> buffer_;
  SearchStats stats_;
  std::vector<std::pair<std::int32_t, std::size_t>> path_;
};

}  // namespace batchmcts

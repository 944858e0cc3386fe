#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "batchmcts/game.hpp"
#include "batchmcts/state_key.hpp"
#include "batchmcts/transposition_table.hpp"

namespace batchmcts {

// The main tree holds statistics of real evaluations only. The batch tree
// is a per-batch copy used to assemble the next batch; both live in the
// same nodes.
enum class TreeSide : std::uint8_t { kMain = 0, kBatch = 1 };

struct EdgeStats {
  std::int64_t visits = 0;
  double value_sum = 0.0;

  double mean() const { return value_sum / static_cast<double>(visits); }
};

inline constexpr std::int32_t kNoNode = -1;

struct MoveStats {
  Move move = 0;
  double prior = 0.0;
  // Structural link shared by both sides; whether the child belongs to a
  // side is decided by SearchTree::contains().
  std::int32_t child = kNoNode;
  std::array<EdgeStats, 2> stats{};

  EdgeStats& at(TreeSide side) { return stats[static_cast<int>(side)]; }
  const EdgeStats& at(TreeSide side) const { return stats[static_cast<int>(side)]; }
};

// Per-node PUCT statistics. Node visits count the node's own insertion
// evaluation plus one per backed-up descent, so on the main side
// visits == 1 + sum of move visits.
struct NodeStats {
  StateKey key;
  std::array<EdgeStats, 2> stats{};
  std::vector<MoveStats> moves;
  std::uint32_t stamp = 0;  // generation the batch side was last synced
  std::uint32_t birth = 0;  // generation a batch-only node was created in
  bool in_main = false;

  EdgeStats& at(TreeSide side) { return stats[static_cast<int>(side)]; }
  const EdgeStats& at(TreeSide side) const { return stats[static_cast<int>(side)]; }
  std::size_t num_moves() const { return moves.size(); }
};

// Arena of nodes with a lazily copied batch side. begin_generation() is the
// O(1) equivalent of copying the main tree into the batch tree: every node
// whose stamp differs from the generation reads as a fresh copy of its main
// statistics on first touch, and batch-only nodes from older generations
// vanish.
class SearchTree {
 public:
  void clear();
  void begin_generation();
  std::uint32_t generation() const { return generation_; }

  std::int32_t root() const { return root_; }
  void set_root(std::int32_t index) { root_ = index; }

  bool contains(std::int32_t index, TreeSide side) const {
    if (index == kNoNode) return false;
    const NodeStats& n = nodes_[index];
    return n.in_main || (side == TreeSide::kBatch && n.birth == generation_);
  }

  NodeStats& node(std::int32_t index) { return nodes_[index]; }
  const NodeStats& node(std::int32_t index) const { return nodes_[index]; }

  // Returns the node with its `side` statistics current. Must only be called
  // for nodes contained in that side.
  NodeStats& touch(std::int32_t index, TreeSide side);

  // Adds a node to `side`, seeded from its evaluation: visits = 1,
  // value_sum = entry.value. `existing` is the arena slot already linked
  // from the parent, or kNoNode to allocate one. Returns the slot.
  std::int32_t insert(std::int32_t existing, const StateKey& key, const TranspositionEntry& entry,
                      std::span<const Move> moves, TreeSide side);

  std::size_t arena_size() const { return nodes_.size(); }
  std::size_t main_node_count() const { return main_nodes_; }
  // Nodes in the current batch tree: the main tree plus batch-only nodes
  // created in this generation.
  std::size_t batch_node_count() const { return main_nodes_ + batch_only_nodes_; }

 private:
  std::vector<NodeStats> nodes_;
  std::int32_t root_ = kNoNode;
  std::uint32_t generation_ = 0;
  std::size_t main_nodes_ = 0;
  std::size_t batch_only_nodes_ = 0;
};

}  // namespace batchmcts

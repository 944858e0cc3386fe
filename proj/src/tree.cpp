#include "batchmcts/tree.hpp"

#include "batchmcts/errors.hpp"

namespace batchmcts {

void SearchTree::clear() {
  nodes_.clear();
  root_ = kNoNode;
  generation_ = 0;
  main_nodes_ = 0;
  batch_only_nodes_ = 0;
}

void SearchTree::begin_generation() {
  ++generation_;
  batch_only_nodes_ = 0;
}

NodeStats& SearchTree::touch(std::int32_t index, TreeSide side) {
  NodeStats& n = nodes_[index];
  if (side == TreeSide::kBatch && n.stamp != generation_) {
    n.at(TreeSide::kBatch) = n.at(TreeSide::kMain);
    for (MoveStats& m : n.moves) m.at(TreeSide::kBatch) = m.at(TreeSide::kMain);
    n.stamp = generation_;
  }
  return n;
}

std::int32_t SearchTree::insert(std::int32_t existing, const StateKey& key,
                                const TranspositionEntry& entry, std::span<const Move> moves,
                                TreeSide side) {
  BATCHMCTS_CHECK(entry.priors.size() == moves.size(), "entry priors do not match legal moves");
  std::int32_t index = existing;
  if (index == kNoNode) {
    index = static_cast<std::int32_t>(nodes_.size());
    NodeStats& fresh = nodes_.emplace_back();
    fresh.key = key;
    fresh.moves.resize(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
      fresh.moves[i].move = moves[i];
      fresh.moves[i].prior = entry.priors[i];
    }
  }
  NodeStats& n = nodes_[index];
  BATCHMCTS_CHECK(!contains(index, side), "node already present in this tree");
  BATCHMCTS_CHECK(n.key == key, "arena slot holds a different position");

  n.at(side) = EdgeStats{1, entry.value};
  for (MoveStats& m : n.moves) m.at(side) = EdgeStats{};
  if (side == TreeSide::kMain) {
    if (n.birth == generation_ && generation_ != 0) --batch_only_nodes_;
    n.in_main = true;
    n.stamp = 0;  // batch side re-syncs on the next generation
    ++main_nodes_;
  } else {
    n.birth = generation_;
    n.stamp = generation_;
    ++batch_only_nodes_;
  }
  return index;
}

}  // namespace batchmcts

#include "batchmcts/bandit.hpp"

#include <cmath>
#include <limits>

namespace batchmcts {

double fpu_value(const NodeStats& node, TreeSide side, const FpuMode& mode) {
  switch (mode.kind) {
    case FpuKind::kConstant:
      return mode.constant;
    case FpuKind::kBestMean: {
      double best = -std::numeric_limits<double>::infinity();
      for (const MoveStats& m : node.moves) {
        const EdgeStats& e = m.at(side);
        if (e.visits > 0) best = std::max(best, e.mean());
      }
      if (best != -std::numeric_limits<double>::infinity()) return best;
      return node.at(side).mean();
    }
    case FpuKind::kMu:
      return node.at(side).mean();
  }
  return 0.0;
}

double bandit_score(const NodeStats& node, TreeSide side, std::size_t slot, double fpu, double c,
                    bool plus_one_under_sqrt) {
  const EdgeStats& e = node.moves[slot].at(side);
  const double mean = e.visits > 0 ? e.mean() : fpu;
  const double parent = static_cast<double>(node.at(side).visits + (plus_one_under_sqrt ? 1 : 0));
  return mean + c * node.moves[slot].prior * std::sqrt(parent) / (1.0 + static_cast<double>(e.visits));
}

std::size_t select_move(const NodeStats& node, TreeSide side, const SearchConfig& config) {
  const double fpu = fpu_value(node, side, config.fpu);
  const double sqrt_parent =
      std::sqrt(static_cast<double>(node.at(side).visits + (config.plus_one_under_sqrt ? 1 : 0)));
  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < node.moves.size(); ++i) {
    const MoveStats& m = node.moves[i];
    const EdgeStats& e = m.at(side);
    const double mean = e.visits > 0 ? e.mean() : fpu;
    // Same operation order as bandit_score, so scores are bit-identical.
    const double score = mean + config.c * m.prior * sqrt_parent / (1.0 + static_cast<double>(e.visits));
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

void update_statistics(NodeStats& node, TreeSide side, std::size_t slot, DescentResult result) {
  if (result.is_unknown()) return;
  EdgeStats& e = node.moves[slot].at(side);
  EdgeStats& n = node.at(side);
  e.visits += 1;
  e.value_sum += result.value();
  n.visits += 1;
  n.value_sum += result.value();
}

void update_statistics_get(NodeStats& node, TreeSide side, std::size_t slot, DescentResult result,
                           PenaltyMode penalty, int penalty_visits) {
  if (!result.is_unknown()) {
    update_statistics(node, side, slot, result);
    return;
  }
  EdgeStats& e = node.moves[slot].at(side);
  EdgeStats& n = node.at(side);
  const double mean = e.visits > 0 ? e.mean() : n.mean();
  e.visits += penalty_visits;
  n.visits += penalty_visits;
  if (penalty == PenaltyMode::kVirtualMean) {
    e.value_sum += penalty_visits * mean;
    n.value_sum += penalty_visits * mean;
  }
}

RootRanking rank_by_visits(const NodeStats& node, TreeSide side) {
  RootRanking r;
  for (std::size_t i = 1; i < node.moves.size(); ++i) {
    if (node.moves[i].at(side).visits > node.moves[r.best].at(side).visits) r.best = i;
  }
  for (std::size_t i = 0; i < node.moves.size(); ++i) {
    if (i == r.best) continue;
    if (!r.has_second || node.moves[i].at(side).visits > node.moves[r.second].at(side).visits) {
      r.second = i;
      r.has_second = true;
    }
  }
  return r;
}

std::size_t second_move_redirect(const NodeStats& root, TreeSide side, int budget, int used,
                                 std::size_t selected) {
  const RootRanking r = rank_by_visits(root, side);
  if (!r.has_second) return selected;
  const std::int64_t n1 = root.moves[r.best].at(side).visits;
  const std::int64_t n2 = root.moves[r.second].at(side).visits;
  return n1 >= n2 + (budget - used) ? r.second : selected;
}

}  // namespace batchmcts

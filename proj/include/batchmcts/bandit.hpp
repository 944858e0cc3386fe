#pragma once

#include "batchmcts/search_config.hpp"
#include "batchmcts/tree.hpp"

namespace batchmcts {

// Outcome of one descent: either a value from the side-to-move perspective
// of the node receiving it, or Unknown when the descent stopped on a state
// that has not been evaluated yet.
class DescentResult {
 public:
  static DescentResult Unknown() { return DescentResult(); }
  static DescentResult Value(double v) { return DescentResult(v); }

  bool is_unknown() const { return !known_; }
  double value() const { return value_; }
  DescentResult negated() const { return known_ ? Value(-value_) : Unknown(); }

 private:
  DescentResult() = default;
  explicit DescentResult(double v) : known_(true), value_(v) {}

  bool known_ = false;
  double value_ = 0.0;
};

double fpu_value(const NodeStats& node, TreeSide side, const FpuMode& mode);

double bandit_score(const NodeStats& node, TreeSide side, std::size_t slot, double fpu, double c,
                    bool plus_one_under_sqrt);

// Argmax of bandit_score; the first maximum in legal-move order wins.
std::size_t select_move(const NodeStats& node, TreeSide side, const SearchConfig& config);

// Main-tree backup: no-op on Unknown.
void update_statistics(NodeStats& node, TreeSide side, std::size_t slot, DescentResult result);

// Batch-tree backup. On Unknown adds `penalty_visits` phantom visits to the
// move and the node; Virtual Mean also adds penalty_visits * mean so the
// move's mean is unchanged (the node's mean stands in for an unvisited move).
void update_statistics_get(NodeStats& node, TreeSide side, std::size_t slot, DescentResult result,
                           PenaltyMode penalty, int penalty_visits);

// Slots of the most and second most visited moves (first wins ties).
struct RootRanking {
  std::size_t best = 0;
  std::size_t second = 0;
  bool has_second = false;
};
RootRanking rank_by_visits(const NodeStats& node, TreeSide side);

// Redirects root selection to the runner-up once the leader can no longer
// be overtaken with the remaining budget.
std::size_t second_move_redirect(const NodeStats& root, TreeSide side, int budget, int used,
                                 std::size_t selected);

}  // namespace batchmcts

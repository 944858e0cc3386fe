#pragma once

#include <cstdint>
#include <functional>

namespace batchmcts {

// Counters for one get_move call.
struct SearchStats {
  std::int64_t forwards = 0;         // states sent to the evaluator
  std::int64_t batches = 0;          // non-empty evaluator calls
  std::int64_t descents = 0;         // value-returning main-tree descents
  std::int64_t main_nodes = 0;       // nodes in the main tree at the end
  std::int64_t final_nodes = 0;      // nodes in the tree the move was read from
  std::int64_t capped_loops = 0;     // put/last-iteration loops stopped by the cap
  std::int64_t transposition_hits = 0;  // PUCD only
  double simulated_ms = 0.0;         // latency model time of all evaluator calls

  double inferences_per_batch() const {
    return batches ? static_cast<double>(forwards) / static_cast<double>(batches) : 0.0;
  }
};

struct SearchEvent {
  enum class Kind { kBatchEvaluated, kPutBatch };
  Kind kind;
  std::int64_t count;  // states evaluated, or descents counted by put_batch
};

using SearchObserver = std::function<void(const SearchEvent&)>;

}  // namespace batchmcts

#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "batchmcts/game.hpp"

namespace batchmcts {

// Deduplicated, ordered set of unevaluated states for one evaluator call.
template <Game G>
class BatchBuffer {
 public:
  explicit BatchBuffer(std::size_t capacity = 1) : capacity_(capacity) {}

  void reset(std::size_t capacity) {
    capacity_ = capacity;
    clear();
  }
  void clear() {
    keys_.clear();
    states_.clear();
  }

  // Adds the state unless it is already queued or the buffer is full.
  bool try_add(const StateKey& key, const G& state) {
    if (full() || std::find(keys_.begin(), keys_.end(), key) != keys_.end()) return false;
    keys_.push_back(key);
    states_.push_back(state);
    return true;
  }

  bool full() const { return keys_.size() >= capacity_; }
  bool empty() const { return keys_.empty(); }
  std::size_t size() const { return keys_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::span<const StateKey> keys() const { return keys_; }
  std::span<const G> states() const { return states_; }

 private:
  std::size_t capacity_;
  std::vector<StateKey> keys_;
  std::vector<G> states_;
};

}  // namespace batchmcts

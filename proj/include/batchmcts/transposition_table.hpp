#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "batchmcts/state_key.hpp"

namespace batchmcts {

// Cached inference result. Immutable once inserted.
struct TranspositionEntry {
  double value = 0.0;
  std::vector<double> priors;
};

// Evaluated states only; search statistics live in the tree.
class TranspositionTable {
 public:
  const TranspositionEntry* find(const StateKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }
  bool contains(const StateKey& key) const { return entries_.contains(key); }

  // Returns false (and logs) if the key is already present; the stored entry
  // is left untouched.
  bool insert(const StateKey& key, TranspositionEntry entry);

  std::size_t size() const { return entries_.size(); }
  std::size_t duplicate_inserts() const { return duplicate_inserts_; }
  void clear() {
    entries_.clear();
    duplicate_inserts_ = 0;
  }

 private:
  std::unordered_map<StateKey, TranspositionEntry, StateKeyHash> entries_;
  std::size_t duplicate_inserts_ = 0;
};

}  // namespace batchmcts

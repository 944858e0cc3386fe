#include "batchmcts/transposition_table.hpp"

#include <iostream>

namespace batchmcts {

bool TranspositionTable::insert(const StateKey& key, TranspositionEntry entry) {
  const auto [it, inserted] = entries_.try_emplace(key, std::move(entry));
  if (!inserted) {
    // An evaluator echoing a state that was already evaluated.
    ++duplicate_inserts_;
    std::clog << "batchmcts: warning: duplicate transposition entry " << key.to_hex() << '\n';
  }
  return inserted;
}

}  // namespace batchmcts

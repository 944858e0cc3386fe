#pragma once

#include <optional>

#include "batchmcts/batch_search.hpp"
#include "batchmcts/pucd.hpp"

namespace batchmcts {

// Picks the search implementation named by config.baseline. Every
// choose_move() call searches from scratch.
template <Game G>
class Engine {
 public:
  Engine(const SearchConfig& config, Evaluator<G>& evaluator,
         std::optional<LatencyModel> latency = std::nullopt) {
    if (config.baseline == Baseline::kPucd) {
      pucd_.emplace(config, evaluator);
      pucd_->set_latency_model(latency);
    } else {
      batch_.emplace(config, evaluator);
      batch_->set_latency_model(latency);
    }
  }

  void set_observer(SearchObserver observer) {
    if (pucd_) pucd_->set_observer(std::move(observer));
    else batch_->set_observer(std::move(observer));
  }

  Move choose_move(const G& root) { return pucd_ ? pucd_->get_move(root) : batch_->get_move(root); }

  const SearchStats& last_stats() const { return pucd_ ? pucd_->stats() : batch_->stats(); }

 private:
  std::optional<BatchSearch<G>> batch_;
  std::optional<PucdSearch<G>> pucd_;
};

}  // namespace batchmcts

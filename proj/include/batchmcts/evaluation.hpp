#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "batchmcts/game.hpp"

namespace batchmcts {

// Result of one inference: value from the side-to-move perspective and one
// prior per legal move, in legal_moves() order.
struct Evaluation {
  double value = 0.0;
  std::vector<double> priors;
};

// Throws LogicError unless priors has `num_moves` nonnegative entries summing
// to 1 within 1e-6 and value is finite. Returns `e` with value clamped to
// [-1, 1].
Evaluation validate_evaluation(Evaluation e, std::size_t num_moves);

// A batched evaluator. One call evaluates a deduplicated batch; output is
// order-aligned with the input. Implementations must tolerate concurrent
// calls from independent engines.
template <Game G>
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual std::vector<Evaluation> evaluate_batch(std::span<const G> states) = 0;
};

// Value 0 and uniform priors everywhere. The baseline for oracle tests.
template <Game G>
class UniformEvaluator final : public Evaluator<G> {
 public:
  std::vector<Evaluation> evaluate_batch(std::span<const G> states) override {
    std::vector<Evaluation> out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::size_t k = states[i].legal_moves().size();
      out[i].priors.assign(k, 1.0 / static_cast<double>(k));
    }
    return out;
  }
};

// Affine batch latency: latency(b) = fixed_ms + per_state_ms * b.
struct LatencyModel {
  double fixed_ms = 26.0;
  double per_state_ms = 0.28;

  double latency_ms(int batch_size) const { return fixed_ms + per_state_ms * batch_size; }
};

// Inferences per second at a given batch size.
double throughput(const LatencyModel& model, int batch_size);

}  // namespace batchmcts

#pragma once

#include <span>
#include <vector>

#include "batchmcts/evaluation.hpp"
#include "batchmcts/hex.hpp"

namespace batchmcts {

// Number of empty cells `p` still needs to join its edges (own stones cost
// nothing, opponent stones are walls). Returns num_cells() + 1 if blocked.
int hex_connection_distance(const HexPosition& pos, Player p);

// clamp((d_opponent - d_self) / N, -1, 1) for the side to move.
double hex_heuristic_value(const HexPosition& pos);

// score(cell) = 1 + adjacent stones of the side to move
//             + (N - 1 - chebyshev distance to the board centre) / N,
// normalised over the empty cells in row-major order.
std::vector<double> hex_heuristic_priors(const HexPosition& pos);

Evaluation hex_heuristic_evaluate(const HexPosition& pos);

// Batch kernels. The parallel version splits the batch across OpenMP
// threads; the serial version is the reference it is tested against.
std::vector<Evaluation> hex_evaluate_batch_serial(std::span<const HexPosition> states);
std::vector<Evaluation> hex_evaluate_batch_parallel(std::span<const HexPosition> states);

class HexHeuristicEvaluator final : public Evaluator<HexPosition> {
 public:
  // Batches smaller than this are evaluated serially; thread start-up costs
  // more than a handful of positions.
  explicit HexHeuristicEvaluator(std::size_t parallel_threshold = 64)
      : parallel_threshold_(parallel_threshold) {}

  std::vector<Evaluation> evaluate_batch(std::span<const HexPosition> states) override;

 private:
  std::size_t parallel_threshold_;
};

}  // namespace batchmcts

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace batchmcts {

enum class FpuKind : std::uint8_t { kConstant, kBestMean, kMu };

// First Play Urgency: the mean assumed for a move with no visits.
struct FpuMode {
  FpuKind kind = FpuKind::kMu;
  double constant = 0.0;  // used by kConstant only

  static FpuMode Constant(double k) { return {FpuKind::kConstant, k}; }
  static FpuMode BestMean() { return {FpuKind::kBestMean, 0.0}; }
  static FpuMode Mu() { return {FpuKind::kMu, 0.0}; }
};

// How a descent that ended on an unevaluated state penalises the moves it
// went through while a batch is being assembled.
enum class PenaltyMode : std::uint8_t { kVirtualLoss, kVirtualMean };

enum class Baseline : std::uint8_t {
  kBatchTree,       // tree + transposition table, batched evaluations
  kSequentialTree,  // the same engine forced to batches of one
  kPucd,            // statistics stored per position (DAG), one evaluation per descent
};

struct SearchConfig {
  double c = 0.5;
  FpuMode fpu = FpuMode::Mu();
  PenaltyMode penalty = PenaltyMode::kVirtualMean;
  int vl = 1;
  int vll = 1;
  int batch_size = 32;
  int num_batches = 32;
  int max_descents = 500;  // N: cap on descents per batch build / per put
  int last_iteration_u = 0;
  bool second_move = false;
  Baseline baseline = Baseline::kBatchTree;
  bool plus_one_under_sqrt = true;
  // Search is deterministic; the seed is carried so configs round-trip.
  std::uint64_t rng_seed = 0;

  // Evaluations the search may request: num_batches * batch_size.
  int budget() const { return num_batches * batch_size; }

  // Throws ConfigError on an invalid combination.
  void validate() const;
};

// Bare sequential PUCT: batches of one, constant 0.2 exploration.
SearchConfig sequential_config(int budget);

std::string_view to_string(FpuKind kind);
std::string_view to_string(PenaltyMode mode);
std::string_view to_string(Baseline baseline);
FpuKind parse_fpu_kind(std::string_view text);
PenaltyMode parse_penalty_mode(std::string_view text);
Baseline parse_baseline(std::string_view text);

}  // namespace batchmcts

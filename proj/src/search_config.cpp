#include "batchmcts/search_config.hpp"

#include <cmath>

#include "batchmcts/errors.hpp"

namespace batchmcts {

void SearchConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(c > 0.0 && std::isfinite(c), "c must be positive");
  require(vl >= 1, "vl must be >= 1");
  require(vll >= 1, "vll must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(num_batches >= 1, "num_batches must be >= 1");
  require(max_descents >= batch_size, "max_descents must be >= batch_size");
  require(last_iteration_u >= 0, "last_iteration_u must be >= 0");
  require(std::isfinite(fpu.constant), "fpu constant must be finite");
}

SearchConfig sequential_config(int budget) {
  SearchConfig cfg;
  cfg.c = 0.2;
  cfg.batch_size = 1;
  cfg.num_batches = budget;
  cfg.baseline = Baseline::kSequentialTree;
  return cfg;
}

std::string_view to_string(FpuKind kind) {
  switch (kind) {
    case FpuKind::kConstant: return "constant";
    case FpuKind::kBestMean: return "best_mean";
    case FpuKind::kMu: return "mu";
  }
  return "?";
}

std::string_view to_string(PenaltyMode mode) {
  return mode == PenaltyMode::kVirtualLoss ? "virtual_loss" : "virtual_mean";
}

std::string_view to_string(Baseline baseline) {
  switch (baseline) {
    case Baseline::kBatchTree: return "batch_tree";
    case Baseline::kSequentialTree: return "sequential_tree";
    case Baseline::kPucd: return "pucd";
  }
  return "?";
}

FpuKind parse_fpu_kind(std::string_view text) {
  if (text == "constant") return FpuKind::kConstant;
  if (text == "best_mean") return FpuKind::kBestMean;
  if (text == "mu") return FpuKind::kMu;
  throw ConfigError("unknown fpu_mode '" + std::string(text) + "'");
}

PenaltyMode parse_penalty_mode(std::string_view text) {
  if (text == "virtual_loss") return PenaltyMode::kVirtualLoss;
  if (text == "virtual_mean") return PenaltyMode::kVirtualMean;
  throw ConfigError("unknown penalty_mode '" + std::string(text) + "'");
}

Baseline parse_baseline(std::string_view text) {
  if (text == "batch_tree") return Baseline::kBatchTree;
  if (text == "sequential_tree") return Baseline::kSequentialTree;
  if (text == "pucd") return Baseline::kPucd;
  throw ConfigError("unknown baseline '" + std::string(text) + "'");
}

}  // namespace batchmcts

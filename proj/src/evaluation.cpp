#include "batchmcts/evaluation.hpp"

#include <cmath>
#include <numeric>

#include "batchmcts/errors.hpp"

namespace batchmcts {

Evaluation validate_evaluation(Evaluation e, std::size_t num_moves) {
  BATCHMCTS_CHECK(e.priors.size() == num_moves,
                  "prior count " + std::to_string(e.priors.size()) + " != legal moves " +
                      std::to_string(num_moves));
  BATCHMCTS_CHECK(std::isfinite(e.value), "non-finite value");
  double sum = 0.0;
  for (double p : e.priors) {
    BATCHMCTS_CHECK(p >= 0.0 && std::isfinite(p), "negative or non-finite prior");
    sum += p;
  }
  BATCHMCTS_CHECK(std::abs(sum - 1.0) <= 1e-6, "priors sum to " + std::to_string(sum));
  e.value = std::clamp(e.value, -1.0, 1.0);
  return e;
}

double throughput(const LatencyModel& model, int batch_size) {
  BATCHMCTS_CHECK(batch_size >= 1, "batch size must be positive");
  return 1000.0 * batch_size / model.latency_ms(batch_size);
}

}  // namespace batchmcts

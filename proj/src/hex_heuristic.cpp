#include "batchmcts/hex_heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <omp.h>

namespace batchmcts {

int hex_connection_distance(const HexPosition& pos, Player p) {
  const int n = pos.size();
  const int cells = pos.num_cells();
  const Cell own = stone_of(p);
  const Cell other = stone_of(opponent(p));
  const int unreachable = cells + 1;

  std::array<int, HexPosition::kMaxCells> dist;
  std::fill(dist.begin(), dist.begin() + cells, unreachable);
  std::deque<int> queue;
  auto cost = [&](int cell) { return pos.cell(cell) == own ? 0 : 1; };

  for (int i = 0; i < n; ++i) {
    const int cell = p == Player::kFirst ? i : i * n;
    if (pos.cell(cell) == other) continue;
    const int d = cost(cell);
    if (d < dist[cell]) {
      dist[cell] = d;
      if (d == 0) queue.push_front(cell);
      else queue.push_back(cell);
    }
  }

  std::array<int, 6> nb;
  while (!queue.empty()) {
    const int cell = queue.front();
    queue.pop_front();
    const int count = hex_neighbors(n, cell, nb);
    for (int i = 0; i < count; ++i) {
      const int next = nb[i];
      if (pos.cell(next) == other) continue;
      const int step = cost(next);
      if (dist[cell] + step < dist[next]) {
        dist[next] = dist[cell] + step;
        if (step == 0) queue.push_front(next);
        else queue.push_back(next);
      }
    }
  }

  int best = unreachable;
  for (int i = 0; i < n; ++i) {
    const int cell = p == Player::kFirst ? (n - 1) * n + i : i * n + (n - 1);
    best = std::min(best, dist[cell]);
  }
  return best;
}

double hex_heuristic_value(const HexPosition& pos) {
  const Player me = pos.to_move();
  const int mine = hex_connection_distance(pos, me);
  const int theirs = hex_connection_distance(pos, opponent(me));
  return std::clamp(static_cast<double>(theirs - mine) / pos.size(), -1.0, 1.0);
}

std::vector<double> hex_heuristic_priors(const HexPosition& pos) {
  const int n = pos.size();
  const double centre = (n - 1) / 2.0;
  const Cell own = stone_of(pos.to_move());
  std::vector<double> scores;
  scores.reserve(pos.num_cells() - pos.ply());
  std::array<int, 6> nb;
  double total = 0.0;
  for (int cell = 0; cell < pos.num_cells(); ++cell) {
    if (pos.cell(cell) != Cell::kEmpty) continue;
    const int count = hex_neighbors(n, cell, nb);
    int adjacent = 0;
    for (int i = 0; i < count; ++i) adjacent += pos.cell(nb[i]) == own;
    const double cheb = std::max(std::abs(cell / n - centre), std::abs(cell % n - centre));
    const double score = 1.0 + adjacent + (n - 1 - cheb) / n;
    scores.push_back(score);
    total += score;
  }
  for (double& s : scores) s /= total;
  return scores;
}

Evaluation hex_heuristic_evaluate(const HexPosition& pos) {
  return {hex_heuristic_value(pos), hex_heuristic_priors(pos)};
}

std::vector<Evaluation> hex_evaluate_batch_serial(std::span<const HexPosition> states) {
  std::vector<Evaluation> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = hex_heuristic_evaluate(states[i]);
  return out;
}

std::vector<Evaluation> hex_evaluate_batch_parallel(std::span<const HexPosition> states) {
  std::vector<Evaluation> out(states.size());
  const auto count = static_cast<std::int64_t>(states.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) out[i] = hex_heuristic_evaluate(states[i]);
  return out;
}

std::vector<Evaluation> HexHeuristicEvaluator::evaluate_batch(std::span<const HexPosition> states) {
  if (states.size() >= parallel_threshold_ && !omp_in_parallel()) {
    return hex_evaluate_batch_parallel(states);
  }
  return hex_evaluate_batch_serial(states);
}

}  // namespace batchmcts

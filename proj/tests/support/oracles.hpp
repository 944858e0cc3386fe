#pragma once

// Independent reference implementations used only by tests. Nothing here
// shares code with the search engine beyond the game and evaluator types.

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "batchmcts/evaluation.hpp"
#include "batchmcts/hex.hpp"
#include "batchmcts/search_config.hpp"
#include "batchmcts/synthetic.hpp"

namespace batchmcts::test_support {

// Plain sequential PUCT on a pointer tree with an evaluation cache. A leaf
// is evaluated and backed up in the same descent; the search stops when a
// descent needs evaluation number budget + 1.
template <Game G>
class SequentialPuctOracle {
 public:
  SequentialPuctOracle(const SearchConfig& cfg, Evaluator<G>& eval) : cfg_(cfg), eval_(eval) {}

  struct Result {
    std::vector<std::int64_t> root_visits;
    std::int64_t forwards = 0;
    // True if some evaluation was followed by max_descents value-returning
    // descents; the batch engine caps that loop and the runs diverge.
    bool hit_descent_cap = false;
  };

  Result run(const G& root, int budget) {
    budget_ = budget;
    forwards_ = 0;
    cache_.clear();
    root_.reset();
    Result result;
    int since_forward = 0;
    for (;;) {
      const std::int64_t before = forwards_;
      if (!visit(root_, root)) break;
      if (forwards_ != before) {
        since_forward = 0;
      } else if (++since_forward >= cfg_.max_descents) {
        result.hit_descent_cap = true;
        break;
      }
    }
    if (root_) {
      for (const Child& c : root_->children) result.root_visits.push_back(c.n);
    }
    result.forwards = forwards_;
    return result;
  }

 private:
  struct Node;
  struct Child {
    Move move;
    double prior;
    std::int64_t n = 0;
    double w = 0.0;
    std::unique_ptr<Node> node;
  };
  struct Node {
    std::int64_t n = 1;
    double w;
    std::vector<Child> children;
  };
  struct Cached {
    double value;
    std::vector<double> priors;
  };

  std::optional<double> visit(std::unique_ptr<Node>& slot, const G& s) {
    if (s.is_terminal()) return s.terminal_value();
    if (!slot) {
      auto it = cache_.find(s.key());
      if (it == cache_.end()) {
        if (forwards_ == budget_) return std::nullopt;
        std::vector<Evaluation> e = eval_.evaluate_batch(std::span<const G>(&s, 1));
        ++forwards_;
        const double v = std::clamp(e[0].value, -1.0, 1.0);
        it = cache_.emplace(s.key(), Cached{v, e[0].priors}).first;
      }
      auto node = std::make_unique<Node>();
      node->w = it->second.value;
      const std::vector<Move> moves = s.legal_moves();
      node->children.resize(moves.size());
      for (std::size_t i = 0; i < moves.size(); ++i) {
        node->children[i].move = moves[i];
        node->children[i].prior = it->second.priors[i];
      }
      slot = std::move(node);
      return it->second.value;
    }
    Node& node = *slot;
    const double fpu = first_play_urgency(node);
    const double root_n = std::sqrt(static_cast<double>(node.n + (cfg_.plus_one_under_sqrt ? 1 : 0)));
    double best = -std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const Child& c = node.children[i];
      const double q = c.n > 0 ? c.w / static_cast<double>(c.n) : fpu;
      const double u = cfg_.c * c.prior * root_n / (1.0 + static_cast<double>(c.n));
      if (q + u > best) {
        best = q + u;
        pick = i;
      }
    }
    Child& child = node.children[pick];
    const std::optional<double> r = visit(child.node, s.play(child.move));
    if (!r) return std::nullopt;
    const double v = -*r;
    child.n += 1;
    child.w += v;
    node.n += 1;
    node.w += v;
    return v;
  }

  double first_play_urgency(const Node& node) const {
    switch (cfg_.fpu.kind) {
      case FpuKind::kConstant: return cfg_.fpu.constant;
      case FpuKind::kBestMean: {
        double best = -std::numeric_limits<double>::infinity();
        for (const Child& c : node.children) {
          if (c.n > 0) best = std::max(best, c.w / static_cast<double>(c.n));
        }
        return std::isinf(best) ? node.w / static_cast<double>(node.n) : best;
      }
      case FpuKind::kMu: return node.w / static_cast<double>(node.n);
    }
    return 0.0;
  }

  SearchConfig cfg_;
  Evaluator<G>& eval_;
  int budget_ = 0;
  std::int64_t forwards_ = 0;
  std::unique_ptr<Node> root_;
  std::unordered_map<StateKey, Cached, StateKeyHash> cache_;
};

// Recursive negamax written independently of synthetic_negamax().
inline double brute_force_negamax(const SyntheticGame& s) {
  if (s.is_terminal()) return s.terminal_value();
  double best = -2.0;
  for (int m = 0; m < s.branching(); ++m) best = std::max(best, -brute_force_negamax(s.play(m)));
  return best;
}

// Shortest connection distance by plain Dijkstra over cell costs.
inline int dijkstra_connection_distance(const HexPosition& pos, Player p) {
  const int n = pos.size();
  const Cell own = stone_of(p);
  const Cell other = stone_of(opponent(p));
  const int big = 1 << 20;
  std::vector<int> dist(pos.num_cells(), big);
  std::vector<char> done(pos.num_cells(), 0);
  auto cost = [&](int cell) { return pos.cell(cell) == own ? 0 : 1; };
  for (int i = 0; i < n; ++i) {
    const int cell = p == Player::kFirst ? i : i * n;
    if (pos.cell(cell) != other) dist[cell] = cost(cell);
  }
  for (;;) {
    int u = -1;
    for (int i = 0; i < pos.num_cells(); ++i) {
      if (!done[i] && dist[i] < big && (u < 0 || dist[i] < dist[u])) u = i;
    }
    if (u < 0) break;
    done[u] = 1;
    const int r = u / n;
    const int c = u % n;
    const int dr[6] = {-1, -1, 0, 0, 1, 1};
    const int dc[6] = {0, 1, -1, 1, -1, 0};
    for (int k = 0; k < 6; ++k) {
      const int rr = r + dr[k];
      const int cc = c + dc[k];
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int v = rr * n + cc;
      if (pos.cell(v) == other) continue;
      dist[v] = std::min(dist[v], dist[u] + cost(v));
    }
  }
  int best = pos.num_cells() + 1;
  for (int i = 0; i < n; ++i) {
    const int cell = p == Player::kFirst ? (n - 1) * n + i : i * n + (n - 1);
    best = std::min(best, dist[cell]);
  }
  return best;
}

// Deterministic, informative evaluator for the synthetic game: value and
// priors are hashes of the position key.
class SyntheticHashEvaluator final : public Evaluator<SyntheticGame> {
 public:
  std::vector<Evaluation> evaluate_batch(std::span<const SyntheticGame> states) override {
    std::vector<Evaluation> out;
    for (const SyntheticGame& s : states) {
      std::uint64_t h = splitmix64(s.key().hi ^ 0x1234);
      Evaluation e;
      e.value = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
      double total = 0.0;
      for (int m = 0; m < s.branching(); ++m) {
        h = splitmix64(h);
        e.priors.push_back(0.05 + static_cast<double>(h >> 11) * 0x1.0p-53);
        total += e.priors.back();
      }
      for (double& p : e.priors) p /= total;
      out.push_back(std::move(e));
    }
    return out;
  }
};

// Non-terminal Hex position after up to `plies` uniformly random moves;
// stops early rather than play a winning move.
template <class Rng>
HexPosition random_hex_position(int size, int plies, Rng& rng) {
  HexPosition pos(size);
  for (int i = 0; i < plies; ++i) {
    const std::vector<Move> moves = pos.legal_moves();
    const HexPosition next = pos.play(moves[rng() % moves.size()]);
    if (next.is_terminal()) break;
    pos = next;
  }
  return pos;
}

}  // namespace batchmcts::test_support

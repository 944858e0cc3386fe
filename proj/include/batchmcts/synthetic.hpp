#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "batchmcts/game.hpp"

namespace batchmcts {

// A uniform game tree of fixed branching and depth whose leaf values are a
// pure hash of (seed, path). Keys are path-dependent, so the game never
// transposes and exhaustive negamax is a cheap exact oracle.
class SyntheticGame {
 public:
  static constexpr int kMaxDepth = 32;

  SyntheticGame(int branching, int depth, std::uint64_t seed);

  int branching() const { return branching_; }
  int depth() const { return depth_; }
  std::uint64_t seed() const { return seed_; }
  std::vector<Move> path() const;

  Player to_move() const { return ply_ % 2 == 0 ? Player::kFirst : Player::kSecond; }
  bool is_terminal() const { return ply_ == depth_; }
  // Continuous leaf value in [-1, 1] from the side-to-move perspective.
  double terminal_value() const;
  std::vector<Move> legal_moves() const;
  SyntheticGame play(Move m) const;

  StateKey key() const { return key_; }
  int ply() const { return ply_; }
  int max_plies() const { return depth_; }
  std::string name() const { return "synthetic"; }
  std::string move_to_string(Move m) const { return std::to_string(m); }
  std::string history_string() const;

 private:
  int branching_;
  int depth_;
  std::uint64_t seed_;
  int ply_ = 0;
  StateKey key_;
  std::array<std::uint8_t, kMaxDepth> path_{};
};

struct NegamaxResult {
  double value = 0.0;             // side-to-move perspective at the root
  std::vector<double> move_values;  // per legal move, root perspective
  Move best_move = -1;            // lowest index among maxima
};

// Exhaustive negamax from `root` using terminal values only.
NegamaxResult synthetic_negamax(const SyntheticGame& root);

}  // namespace batchmcts

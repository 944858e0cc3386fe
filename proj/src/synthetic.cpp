#include "batchmcts/synthetic.hpp"

#include <limits>

#include "batchmcts/errors.hpp"

namespace batchmcts {

SyntheticGame::SyntheticGame(int branching, int depth, std::uint64_t seed)
    : branching_(branching), depth_(depth), seed_(seed) {
  BATCHMCTS_CHECK(branching >= 1 && branching <= 255, "branching out of range");
  BATCHMCTS_CHECK(depth >= 1 && depth <= kMaxDepth, "depth out of range");
  key_.hi = hash_combine(seed, 0x5359'4E54ULL);
  key_.lo = hash_combine(seed, 0x5452'4545ULL);
}

std::vector<Move> SyntheticGame::path() const {
  return {path_.begin(), path_.begin() + ply_};
}

double SyntheticGame::terminal_value() const {
  BATCHMCTS_CHECK(is_terminal(), "terminal_value on an internal node");
  const std::uint64_t h = splitmix64(key_.hi ^ splitmix64(key_.lo));
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

std::vector<Move> SyntheticGame::legal_moves() const {
  BATCHMCTS_CHECK(!is_terminal(), "legal_moves on a leaf");
  std::vector<Move> moves(branching_);
  for (int i = 0; i < branching_; ++i) moves[i] = i;
  return moves;
}

SyntheticGame SyntheticGame::play(Move m) const {
  BATCHMCTS_CHECK(!is_terminal() && m >= 0 && m < branching_, "illegal synthetic move");
  SyntheticGame next = *this;
  next.path_[ply_] = static_cast<std::uint8_t>(m);
  next.ply_ = ply_ + 1;
  // Chained hashing makes the key depend on move order, not just the multiset.
  next.key_.hi = hash_combine(key_.hi, static_cast<std::uint64_t>(m) + 1);
  next.key_.lo = hash_combine(key_.lo ^ 0xA5A5A5A5ULL, static_cast<std::uint64_t>(m) + 1);
  return next;
}

std::string SyntheticGame::history_string() const {
  std::string out;
  for (int i = 0; i < ply_; ++i) {
    if (i) out += ' ';
    out += std::to_string(path_[i]);
  }
  return out;
}

namespace {

double negamax(const SyntheticGame& s) {
  if (s.is_terminal()) return s.terminal_value();
  double best = -std::numeric_limits<double>::infinity();
  for (Move m : s.legal_moves()) best = std::max(best, -negamax(s.play(m)));
  return best;
}

}  // namespace

NegamaxResult synthetic_negamax(const SyntheticGame& root) {
  NegamaxResult result;
  if (root.is_terminal()) {
    result.value = root.terminal_value();
    return result;
  }
  result.value = -std::numeric_limits<double>::infinity();
  for (Move m : root.legal_moves()) {
    const double v = -negamax(root.play(m));
    result.move_values.push_back(v);
    if (v > result.value) {
      result.value = v;
      result.best_move = m;
    }
  }
  return result;
}

}  // namespace batchmcts

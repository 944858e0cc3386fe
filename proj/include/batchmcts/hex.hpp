#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batchmcts/game.hpp"

namespace batchmcts {

enum class Cell : std::uint8_t { kEmpty = 0, kFirst = 1, kSecond = 2 };

constexpr Cell stone_of(Player p) { return p == Player::kFirst ? Cell::kFirst : Cell::kSecond; }

// Hex on an N x N rhombus. The first player connects the top row to the
// bottom row, the second player connects the left column to the right
// column. Cells are indexed row-major; neighbours of (r, c) are
// (r-1, c), (r-1, c+1), (r, c-1), (r, c+1), (r+1, c-1), (r+1, c).
//
// The position carries an incrementally maintained union-find with one
// virtual node per board edge, so winner detection is O(alpha) per move.
class HexPosition {
 public:
  static constexpr int kMaxSize = 11;
  static constexpr int kMaxCells = kMaxSize * kMaxSize;

  explicit HexPosition(int size = 7);

  // Replays a space-separated move list ("a1 c3 ...") from the empty board.
  static HexPosition from_moves(int size, std::string_view moves);

  int size() const { return size_; }
  int num_cells() const { return size_ * size_; }
  Player to_move() const { return to_move_; }
  Cell cell(int index) const { return board_[index]; }
  Cell cell(int row, int col) const { return board_[row * size_ + col]; }
  std::span<const Cell> board() const { return {board_.data(), static_cast<std::size_t>(num_cells())}; }

  bool is_terminal() const { return winner_.has_value(); }
  std::optional<Player> winner() const { return winner_; }
  // Side-to-move perspective. The player who just moved made the
  // connection, so this is always -1.
  double terminal_value() const;

  std::vector<Move> legal_moves() const;
  bool is_legal(Move m) const;
  HexPosition play(Move m) const;

  StateKey key() const { return key_; }
  int ply() const { return ply_; }
  int max_plies() const { return num_cells(); }
  std::string name() const { return "hex" + std::to_string(size_); }

  std::string move_to_string(Move m) const;
  std::optional<Move> parse_move(std::string_view text) const;
  std::span<const std::uint8_t> history() const { return {history_.data(), static_cast<std::size_t>(ply_)}; }
  std::string history_string() const;

  static StateKey zobrist(int cell, Player p);

 private:
  int find(int x) const;
  void unite(int a, int b);

  int size_;
  int ply_ = 0;
  Player to_move_ = Player::kFirst;
  std::optional<Player> winner_;
  StateKey key_;
  std::array<Cell, kMaxCells> board_{};
  std::array<std::uint8_t, kMaxCells> history_{};
  // num_cells() cells followed by top, bottom, left, right virtual nodes.
  mutable std::array<std::int16_t, kMaxCells + 4> parent_{};
};

// Neighbour cells of `cell` on a size x size board; returns the count written.
int hex_neighbors(int size, int cell, std::array<int, 6>& out);

// Winner of an arbitrary board, computed from scratch. Used to audit the
// incremental detection and for boards not produced by play().
std::optional<Player> hex_winner(int size, std::span<const Cell> board);

// True when `p` has a chain joining its two edges on `board`.
bool hex_connected(int size, std::span<const Cell> board, Player p);

}  // namespace batchmcts

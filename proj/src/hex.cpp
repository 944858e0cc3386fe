#include "batchmcts/hex.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "batchmcts/errors.hpp"

namespace batchmcts {
namespace {

struct ZobristTable {
  std::array<std::array<StateKey, HexPosition::kMaxCells>, 2> keys;

  ZobristTable() {
    std::uint64_t s = 0x48455821ULL;
    for (auto& per_player : keys) {
      for (auto& k : per_player) {
        s = splitmix64(s);
        k.hi = s;
        s = splitmix64(s);
        k.lo = s;
      }
    }
  }
};

const ZobristTable& zobrist_table() {
  static const ZobristTable table;
  return table;
}

}  // namespace

int hex_neighbors(int size, int cell, std::array<int, 6>& out) {
  static constexpr int kDr[6] = {-1, -1, 0, 0, 1, 1};
  static constexpr int kDc[6] = {0, 1, -1, 1, -1, 0};
  const int r = cell / size;
  const int c = cell % size;
  int n = 0;
  for (int i = 0; i < 6; ++i) {
    const int rr = r + kDr[i];
    const int cc = c + kDc[i];
    if (rr >= 0 && rr < size && cc >= 0 && cc < size) out[n++] = rr * size + cc;
  }
  return n;
}

HexPosition::HexPosition(int size) : size_(size) {
  BATCHMCTS_CHECK(size >= 1 && size <= kMaxSize, "hex board size out of range");
  for (int i = 0; i < num_cells() + 4; ++i) parent_[i] = static_cast<std::int16_t>(i);
}

StateKey HexPosition::zobrist(int cell, Player p) {
  return zobrist_table().keys[static_cast<int>(p)][cell];
}

int HexPosition::find(int x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void HexPosition::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[std::max(a, b)] = static_cast<std::int16_t>(std::min(a, b));
}

double HexPosition::terminal_value() const {
  BATCHMCTS_CHECK(is_terminal(), "terminal_value on a non-terminal position");
  return -1.0;
}

std::vector<Move> HexPosition::legal_moves() const {
  BATCHMCTS_CHECK(!is_terminal(), "legal_moves on a terminal position");
  std::vector<Move> moves;
  moves.reserve(num_cells() - ply_);
  for (int i = 0; i < num_cells(); ++i) {
    if (board_[i] == Cell::kEmpty) moves.push_back(i);
  }
  return moves;
}

bool HexPosition::is_legal(Move m) const {
  return !is_terminal() && m >= 0 && m < num_cells() && board_[m] == Cell::kEmpty;
}

HexPosition HexPosition::play(Move m) const {
  BATCHMCTS_CHECK(is_legal(m), "illegal hex move " + std::to_string(m));
  HexPosition next = *this;
  const Cell stone = stone_of(to_move_);
  next.board_[m] = stone;
  next.history_[ply_] = static_cast<std::uint8_t>(m);
  next.ply_ = ply_ + 1;
  next.key_ ^= zobrist(m, to_move_);

  const int n = num_cells();
  const int r = m / size_;
  const int c = m % size_;
  if (to_move_ == Player::kFirst) {
    if (r == 0) next.unite(m, n);
    if (r == size_ - 1) next.unite(m, n + 1);
  } else {
    if (c == 0) next.unite(m, n + 2);
    if (c == size_ - 1) next.unite(m, n + 3);
  }
  std::array<int, 6> nb;
  const int count = hex_neighbors(size_, m, nb);
  for (int i = 0; i < count; ++i) {
    if (next.board_[nb[i]] == stone) next.unite(m, nb[i]);
  }
  const bool won = to_move_ == Player::kFirst ? next.find(n) == next.find(n + 1)
                                              : next.find(n + 2) == next.find(n + 3);
  if (won) next.winner_ = to_move_;
  next.to_move_ = opponent(to_move_);
  return next;
}

std::string HexPosition::move_to_string(Move m) const {
  std::string s(1, static_cast<char>('a' + m % size_));
  s += std::to_string(m / size_ + 1);
  return s;
}

std::optional<Move> HexPosition::parse_move(std::string_view text) const {
  if (text.size() < 2) return std::nullopt;
  const char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
  const int col = letter - 'a';
  int row = 0;
  for (char ch : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    row = row * 10 + (ch - '0');
    if (row > size_) return std::nullopt;
  }
  row -= 1;
  if (col < 0 || col >= size_ || row < 0 || row >= size_) return std::nullopt;
  return row * size_ + col;
}

std::string HexPosition::history_string() const {
  std::string out;
  for (int i = 0; i < ply_; ++i) {
    if (i) out += ' ';
    out += move_to_string(history_[i]);
  }
  return out;
}

HexPosition HexPosition::from_moves(int size, std::string_view moves) {
  HexPosition pos(size);
  std::istringstream in{std::string(moves)};
  std::string token;
  while (in >> token) {
    const auto m = pos.parse_move(token);
    if (!m || !pos.is_legal(*m)) throw LogicError("bad hex move '" + token + "'");
    pos = pos.play(*m);
  }
  return pos;
}

bool hex_connected(int size, std::span<const Cell> board, Player p) {
  const Cell stone = stone_of(p);
  std::vector<char> seen(board.size(), 0);
  std::vector<int> stack;
  for (int i = 0; i < size; ++i) {
    const int cell = p == Player::kFirst ? i : i * size;
    if (board[cell] == stone) {
      seen[cell] = 1;
      stack.push_back(cell);
    }
  }
  std::array<int, 6> nb;
  while (!stack.empty()) {
    const int cell = stack.back();
    stack.pop_back();
    const int r = cell / size;
    const int c = cell % size;
    if ((p == Player::kFirst && r == size - 1) || (p == Player::kSecond && c == size - 1)) return true;
    const int count = hex_neighbors(size, cell, nb);
    for (int i = 0; i < count; ++i) {
      if (!seen[nb[i]] && board[nb[i]] == stone) {
        seen[nb[i]] = 1;
        stack.push_back(nb[i]);
      }
    }
  }
  return false;
}

std::optional<Player> hex_winner(int size, std::span<const Cell> board) {
  BATCHMCTS_CHECK(static_cast<int>(board.size()) == size * size, "board size mismatch");
  const bool first = hex_connected(size, board, Player::kFirst);
  const bool second = hex_connected(size, board, Player::kSecond);
  BATCHMCTS_CHECK(!(first && second), "both players connected");
  if (first) return Player::kFirst;
  if (second) return Player::kSecond;
  return std::nullopt;
}

}  // namespace batchmcts

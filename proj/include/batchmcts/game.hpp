#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "batchmcts/state_key.hpp"

namespace batchmcts {

// Game-specific move identifier (a cell for Hex, a branch for the synthetic
// tree). Search statistics are indexed by the position of a move in
// legal_moves(), not by this value.
using Move = int;

enum class Player : std::uint8_t { kFirst = 0, kSecond = 1 };

constexpr Player opponent(Player p) {
  return p == Player::kFirst ? Player::kSecond : Player::kFirst;
}

// Requirements the search places on a position type. Positions are values:
// play() returns a fresh successor and never mutates its receiver.
template <class G>
concept Game = std::copyable<G> && requires(const G g, Move m) {
  { g.is_terminal() } -> std::convertible_to<bool>;
  { g.terminal_value() } -> std::convertible_to<double>;
  { g.legal_moves() } -> std::same_as<std::vector<Move>>;
  { g.play(m) } -> std::same_as<G>;
  { g.key() } -> std::same_as<StateKey>;
  { g.to_move() } -> std::same_as<Player>;
  { g.ply() } -> std::convertible_to<int>;
  { g.max_plies() } -> std::convertible_to<int>;
  { g.name() } -> std::convertible_to<std::string>;
  { g.move_to_string(m) } -> std::convertible_to<std::string>;
  { g.history_string() } -> std::convertible_to<std::string>;
};

}  // namespace batchmcts

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "batchmcts/evaluation.hpp"

namespace batchmcts {

// Connection dropped or timed out; the request may be retried on a new
// connection.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The peer answered with something that is not a valid response (bad JSON,
// wrong id, misaligned batch, error reply, protocol version mismatch).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kWireProtocolVersion = 1;
inline constexpr const char* kEvalAddressEnv = "BATCHMCTS_EVAL_ADDR";

// Newline-delimited text channel.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void send_line(std::string_view line) = 0;
  virtual std::string read_line() = 0;
};

// Bidirectional channel over a pair of file descriptors (a socket uses the
// same descriptor twice). Owns the descriptors.
class FdLineChannel : public LineChannel {
 public:
  FdLineChannel(int read_fd, int write_fd, std::chrono::milliseconds timeout);
  ~FdLineChannel() override;
  FdLineChannel(const FdLineChannel&) = delete;
  FdLineChannel& operator=(const FdLineChannel&) = delete;

  void send_line(std::string_view line) override;
  std::string read_line() override;

 private:
  int read_fd_;
  int write_fd_;
  std::chrono::milliseconds timeout_;
  std::string pending_;
};

// "host:port" over TCP.
std::unique_ptr<LineChannel> connect_tcp(std::string_view address,
                                         std::chrono::milliseconds timeout = std::chrono::seconds(30));

// Spawns argv[0] with its standard streams attached to the channel. The
// child is killed and reaped when the channel is destroyed.
std::unique_ptr<LineChannel> spawn_process(const std::vector<std::string>& argv,
                                           std::chrono::milliseconds timeout = std::chrono::seconds(30));

// Configured address, else $BATCHMCTS_EVAL_ADDR, else nullopt.
std::optional<std::string> resolve_eval_address(const std::string& configured);

// Client side of the evaluation protocol. Performs the handshake on
// construction; one request in flight at a time.
class WireClient {
 public:
  WireClient(std::unique_ptr<LineChannel> channel, std::string game);

  // Sends move-sequence strings and returns one raw evaluation per state.
  std::vector<Evaluation> request(const std::vector<std::string>& states);

  const std::string& game() const { return game_; }

 private:
  std::unique_ptr<LineChannel> channel_;
  std::string game_;
  std::uint64_t next_id_ = 1;
  std::mutex mutex_;
};

// Evaluator backed by an out-of-process server. States are sent as move
// sequences from the initial position.
template <Game G>
class RemoteEvaluator final : public Evaluator<G> {
 public:
  RemoteEvaluator(std::unique_ptr<LineChannel> channel, std::string game)
      : client_(std::move(channel), std::move(game)) {}

  std::vector<Evaluation> evaluate_batch(std::span<const G> states) override {
    std::vector<std::string> encoded;
    encoded.reserve(states.size());
    for (const G& s : states) encoded.push_back(s.history_string());
    std::vector<Evaluation> evals = client_.request(encoded);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::size_t moves = states[i].legal_moves().size();
      if (evals[i].priors.size() != moves) {
        throw ProtocolError("state " + std::to_string(i) + ": " + std::to_string(evals[i].priors.size()) +
                            " priors for " + std::to_string(moves) + " legal moves");
      }
      evals[i].value = std::clamp(evals[i].value, -1.0, 1.0);
    }
    return evals;
  }

 private:
  WireClient client_;
};

}  // namespace batchmcts

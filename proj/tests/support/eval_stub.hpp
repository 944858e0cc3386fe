#pragma once

#include <string>

#include "batchmcts/wire_client.hpp"

namespace batchmcts::test_support {

// Misbehaviours the stub can be asked to exhibit.
enum class StubMode {
  kHeuristic,
  kUniform,
  kWrongVersion,  // handshake answers protocol 2
  kRejectHello,   // handshake answers with an error
  kErrorReply,    // every request gets an error response
  kWrongId,
  kMisaligned,    // one evaluation too few
  kDropOnRequest  // closes the connection instead of answering
};

StubMode parse_stub_mode(const std::string& text);

// Serves one client session until the peer disconnects or the mode says to
// drop. Positions are rebuilt from the move strings and evaluated with the
// library heuristic.
void serve_session(LineChannel& channel, StubMode mode);

// Listens on 127.0.0.1 with an ephemeral port and serves exactly one
// connection on a background thread.
class TcpStubServer {
 public:
  explicit TcpStubServer(StubMode mode);
  ~TcpStubServer();
  TcpStubServer(const TcpStubServer&) = delete;
  TcpStubServer& operator=(const TcpStubServer&) = delete;

  std::string address() const;

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace batchmcts::test_support

#include "batchmcts/wire_client.hpp"

#include <arpa/inet.h>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>

#include "json.hpp"

namespace batchmcts {
namespace {

using nlohmann::json;

void ignore_sigpipe() {
  static const bool once = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

class ChildChannel final : public LineChannel {
 public:
  ChildChannel(pid_t pid, int read_fd, int write_fd, std::chrono::milliseconds timeout)
      : pid_(pid), fds_(read_fd, write_fd, timeout) {}
  ~ChildChannel() override {
    ::kill(pid_, SIGTERM);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }

  void send_line(std::string_view line) override { fds_.send_line(line); }
  std::string read_line() override { return fds_.read_line(); }

 private:
  pid_t pid_;
  FdLineChannel fds_;
};

}  // namespace

FdLineChannel::FdLineChannel(int read_fd, int write_fd, std::chrono::milliseconds timeout)
    : read_fd_(read_fd), write_fd_(write_fd), timeout_(timeout) {
  ignore_sigpipe();
}

FdLineChannel::~FdLineChannel() {
  ::close(read_fd_);
  if (write_fd_ != read_fd_) ::close(write_fd_);
}

void FdLineChannel::send_line(std::string_view line) {
  std::string data(line);
  data += '\n';
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(write_fd_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("write"));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string FdLineChannel::read_line() {
  for (;;) {
    const auto nl = pending_.find('\n');
    if (nl != std::string::npos) {
      std::string line = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      return line;
    }
    pollfd pfd{read_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(timeout_.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("poll"));
    }
    if (ready == 0) throw TransportError("timed out waiting for evaluator");
    char buf[4096];
    const ssize_t n = ::read(read_fd_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("read"));
    }
    if (n == 0) throw TransportError("evaluator closed the connection");
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

std::unique_ptr<LineChannel> connect_tcp(std::string_view address, std::chrono::milliseconds timeout) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos) throw TransportError("address must be host:port");
  const std::string host(address.substr(0, colon));
  const std::string port(address.substr(colon + 1));
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &found); rc != 0) {
    throw TransportError("resolve " + std::string(address) + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(found);
  if (fd < 0) throw TransportError("cannot connect to " + std::string(address));
  return std::make_unique<FdLineChannel>(fd, fd, timeout);
}

std::unique_ptr<LineChannel> spawn_process(const std::vector<std::string>& argv,
                                           std::chrono::milliseconds timeout) {
  if (argv.empty()) throw TransportError("empty evaluator command");
  int to_child[2];
  int from_child[2];
  if (::pipe(to_child) != 0) throw TransportError(errno_text("pipe"));
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw TransportError(errno_text("pipe"));
  }
  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw TransportError(errno_text("fork"));
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::make_unique<ChildChannel>(pid, from_child[0], to_child[1], timeout);
}

std::optional<std::string> resolve_eval_address(const std::string& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv(kEvalAddressEnv); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

WireClient::WireClient(std::unique_ptr<LineChannel> channel, std::string game)
    : channel_(std::move(channel)), game_(std::move(game)) {
  channel_->send_line(json{{"hello", {{"protocol", kWireProtocolVersion}, {"game", game_}}}}.dump());
  const std::string line = channel_->read_line();
  json reply;
  try {
    reply = json::parse(line);
  } catch (const json::exception&) {
    throw ProtocolError("malformed handshake reply: " + line);
  }
  if (reply.contains("error")) throw ProtocolError("handshake rejected: " + reply["error"].dump());
  if (!reply.contains("ok") || !reply["ok"].is_object() || !reply["ok"].contains("protocol")) {
    throw ProtocolError("unexpected handshake reply: " + line);
  }
  const json& version = reply["ok"]["protocol"];
  if (!version.is_number_integer() || version.get<int>() != kWireProtocolVersion) {
    throw ProtocolError("protocol version mismatch: server speaks " + version.dump());
  }
}

std::vector<Evaluation> WireClient::request(const std::vector<std::string>& states) {
  std::lock_guard lock(mutex_);
  const std::uint64_t id = next_id_++;
  channel_->send_line(json{{"id", id}, {"game", game_}, {"states", states}}.dump());
  const std::string line = channel_->read_line();

  std::vector<Evaluation> out;
  try {
    const json reply = json::parse(line);
    if (!reply.contains("id") || reply["id"] != id) throw ProtocolError("response id mismatch: " + line);
    if (reply.contains("error")) throw ProtocolError("evaluator error: " + reply["error"].get<std::string>());
    const json& evals = reply.at("evals");
    if (!evals.is_array() || evals.size() != states.size()) {
      throw ProtocolError("expected " + std::to_string(states.size()) + " evaluations");
    }
    out.reserve(evals.size());
    for (const json& e : evals) {
      Evaluation ev;
      ev.value = e.at("value").get<double>();
      ev.priors = e.at("priors").get<std::vector<double>>();
      out.push_back(std::move(ev));
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed response: ") + e.what());
  }
  return out;
}

}  // namespace batchmcts

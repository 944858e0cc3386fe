#pragma once

#include <stdexcept>
#include <string>

namespace batchmcts {

// Contract violation inside the library or a game model (illegal move,
// runaway recursion, misaligned evaluator output).
class LogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The search could not produce a move (e.g. the root never got evaluated).
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void check_failed(const char* expr, const char* file, int line,
                               const std::string& message);

}  // namespace batchmcts

#define BATCHMCTS_CHECK(cond, msg)                                        \
  do {                                                                    \
    if (!(cond)) ::batchmcts::check_failed(#cond, __FILE__, __LINE__, msg); \
  } while (false)

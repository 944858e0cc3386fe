#include "batchmcts/errors.hpp"

#include <cstdio>
#include <sstream>

#include "batchmcts/state_key.hpp"

namespace batchmcts {

void check_failed(const char* expr, const char* file, int line, const std::string& message) {
  std::ostringstream out;
  out << file << ":" << line << ": check failed: " << expr;
  if (!message.empty()) out << " (" << message << ")";
  throw LogicError(out.str());
}

std::string StateKey::to_hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

}  // namespace batchmcts

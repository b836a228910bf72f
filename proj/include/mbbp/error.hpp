#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbbp {

/// Raised when an operation is called outside its contract (dead vertex,
/// out-of-range id, precondition not met).
class usage_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Malformed instance input. Carries the 1-based line number when known.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string &what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class fetch_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mbbp

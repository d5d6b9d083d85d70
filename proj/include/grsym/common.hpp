#ifndef GRSYM_COMMON_HPP
#define GRSYM_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace grsym {

using AtomId = std::uint32_t;

/// Script or expression text failed to parse.
struct ParseError : std::runtime_error {
  int line = 0;
  explicit ParseError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

/// Well-formed request whose computation cannot be completed.
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Request outside the supported fragment (nested transcendentals, etc.).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace grsym

#endif

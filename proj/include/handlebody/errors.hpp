#pragma once

#include <stdexcept>
#include <string>

namespace handlebody {

// Exit-code taxonomy used by the CLI: 2 parse/validate, 3 move failure,
// 4 precondition, 5 internal contract violation.
struct ParseError : std::runtime_error {
  int line = 0, column = 0;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(msg), line(line_), column(col_) {}
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace handlebody

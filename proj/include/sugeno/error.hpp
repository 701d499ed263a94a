#pragma once

#include <stdexcept>
#include <string>

namespace sugeno {

enum class ErrorKind {
  invalid_input,   // malformed data, unknown names, bad indices
  domain,          // value outside the domain of an operation
  not_enumerable,  // discrete-only operation on an interval measure
  hypothesis,      // a precondition of a theorem-level operation fails
  not_concave,     // support line violated
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace sugeno

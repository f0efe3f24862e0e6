#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnet {

enum class ErrorKind {
    theory_mismatch,
    unsupported_theory,
    invalid_argument,
    unmapped_name,
    ill_typed,
    infinite_result,
    parse_error,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every module. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace qnet

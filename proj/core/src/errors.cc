#include "vixsel/errors.h"

namespace vixsel {

Error::Error(const std::string& message)
    : std::runtime_error(message), full_message_(message) {}

void Error::set_statement(std::size_t index) {
  statement_ = index;
  full_message_ = "statement " + std::to_string(index) + ": " +
                  std::runtime_error::what();
}

const char* Error::what() const noexcept { return full_message_.c_str(); }

SyntaxError::SyntaxError(const std::string& message, std::size_t line,
                         std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

}  // namespace vixsel

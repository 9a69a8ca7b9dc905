#include "fstar/errors.hpp"

namespace fstar {

namespace {

std::string format_parse_message(const std::string& message, std::size_t position,
                                 const std::vector<std::string>& expected) {
  std::string out = message + " at position " + std::to_string(position);
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t position,
                       std::vector<std::string> expected)
    : Error(format_parse_message(message, position, expected)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace fstar

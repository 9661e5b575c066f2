#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "cbal/instance.hpp"

namespace cbal {

/// Syntax or schema problem in an instance document. `line` is 0 when the
/// problem is structural rather than lexical; `field` names the JSON path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::string field);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& instance);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace cbal

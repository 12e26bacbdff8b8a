#pragma once

#include <stdexcept>
#include <string>

namespace clocklab {

/// Bad input values or malformed structures (exit code 1 at the CLI).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario / manifest problems: dangling references, missing files, bad keys.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario text that does not parse; carries line/column of the offending token.
struct parse_error : config_error {
  int line = 0;
  int column = 0;
  parse_error(const std::string& what, int line_, int column_)
      : config_error(what + " (line " + std::to_string(line_) + ", column " +
                     std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

} // namespace clocklab

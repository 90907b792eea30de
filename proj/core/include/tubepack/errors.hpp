#pragma once

#include <stdexcept>
#include <string>

namespace tubepack {

// Instance text could not be parsed; line/column are 1-based.
struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg) + " (line " + std::to_string(line_) +
                           ", column " + std::to_string(col_) + ")"),
        line(line_),
        column(col_) {}
};

struct DuplicateId : ParseError {
  using ParseError::ParseError;
};

struct NonPositiveDimension : ParseError {
  using ParseError::ParseError;
};

// Solution document violates the schema (unknown version, missing field,
// dangling parent reference...).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solution references a type id the instance does not declare.
struct MalformedSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Some item fits in no empty container in any allowed orientation.
struct Unpackable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotATubeHolder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotABoxHolder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace tubepack

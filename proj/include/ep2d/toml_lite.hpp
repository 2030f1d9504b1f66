#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ep2d::toml {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

// Subset: [table] and [[array.of.tables]] headers with dotted names,
// bare or quoted keys, dotted keys, basic strings, integers, floats
// (incl. inf/nan), booleans, single-line arrays of those. # comments.
nlohmann::json parse(const std::string& text);

// Inverse of parse for objects built from the same subset. Scalars and
// arrays of scalars come first in a table, then subtables in key order.
std::string dump(const nlohmann::json& doc);

}  // namespace ep2d::toml

#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace fockangle::cli {

using json = nlohmann::json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

/// Top-level report: tool version, config echo, results and per-degree tables.
struct Report {
  std::string command;
  json config = json::object();
  json results = json::object();
  std::map<std::string, Table> tables;

  json to_json_value() const;
  /// Canonical JSON: sorted keys, two-space indent, doubles with 17 significant digits.
  std::string to_json() const;
  /// Scalar results as `# key: value` lines, then each table after a `# table: name` line.
  std::string to_csv() const;
};

/// Canonical serialisation of any JSON value (see Report::to_json).
std::string canonical_json(const json& value);

/// A double with 17 significant digits ("null" for non-finite values).
std::string format_double(double value);

extern const char* const kToolVersion;

}  // namespace fockangle::cli

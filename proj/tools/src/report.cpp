#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace fockangle::cli {

const char* const kToolVersion = "0.1.0";

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string s(buffer);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(const json& v, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write(v[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(v[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::string& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (v.is_array()) {
    bool flat = true;
    for (const auto& e : v) flat = flat && !e.is_structured();
    if (!flat) {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
      return;
    }
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? " " : "") + csv_cell(v[i]);
    out += "# " + prefix + ": " + joined + "\n";
    return;
  }
  out += "# " + prefix + ": " + csv_cell(v) + "\n";
}

}  // namespace

std::string canonical_json(const json& value) {
  std::string out;
  write(value, out, 0);
  out += "\n";
  return out;
}

json Report::to_json_value() const {
  json top = json::object();
  top["tool_version"] = kToolVersion;
  top["command"] = command;
  top["config"] = config;
  top["results"] = results;
  json tabs = json::object();
  for (const auto& [name, table] : tables) {
    json t = json::object();
    t["columns"] = table.columns;
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back(r);
    t["rows"] = rows;
    tabs[name] = t;
  }
  top["tables"] = tabs;
  return top;
}

std::string Report::to_json() const { return canonical_json(to_json_value()); }

std::string Report::to_csv() const {
  std::string out;
  out += "# tool_version: " + std::string(kToolVersion) + "\n";
  out += "# command: " + command + "\n";
  flatten(config, "config", out);
  flatten(results, "results", out);
  for (const auto& [name, table] : tables) {
    out += "# table: " + name + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
      out += "\n";
    }
  }
  return out;
}

}  // namespace fockangle::cli

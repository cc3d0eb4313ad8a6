#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace egue::cli {

inline constexpr const char* kVersion = "0.1.0";

/// monostate marks a missing entry: null in JSON, an empty CSV cell.
using Value = std::variant<std::monostate, std::string, double, long long, bool>;

struct Record {
  std::vector<std::pair<std::string, Value>> fields;

  Record& add(std::string key, Value value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Record& add(std::string key, double value) { return add(std::move(key), Value(value)); }
  Record& add(std::string key, bool value) { return add(std::move(key), Value(value)); }
  Record& add(std::string key, std::string value) {
    return add(std::move(key), Value(std::move(value)));
  }
  Record& add(std::string key, const char* value) {
    return add(std::move(key), Value(std::string(value)));
  }
  Record& add(std::string key, int value) {
    return add(std::move(key), Value(static_cast<long long>(value)));
  }
  Record& add(std::string key, long value) {
    return add(std::move(key), Value(static_cast<long long>(value)));
  }
};

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json summary; ///< optional command-specific aggregate values
  std::vector<Record> records;
  int exit_code = 0;
};

/// Locale-independent shortest representation that parses back to `value`.
std::string format_double(double value);

nlohmann::json to_json(const Report& report);
/// Header row from the union of record keys in first-seen order.
std::string to_csv(const Report& report);

} // namespace egue::cli

#include "egue/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace egue::cli {

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string value_to_csv(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

} // namespace

nlohmann::json to_json(const Report& report) {
  nlohmann::json meta = {{"version", kVersion},
                         {"command", report.command},
                         {"params", report.params}};
  if (!report.summary.is_null()) {
    meta["summary"] = report.summary;
  }
  nlohmann::json records = nlohmann::json::array();
  for (const Record& r : report.records) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [key, value] : r.fields) {
      obj[key] = value_to_json(value);
    }
    records.push_back(std::move(obj));
  }
  return {{"meta", std::move(meta)}, {"records", std::move(records)}};
}

std::string to_csv(const Report& report) {
  std::vector<std::string> header;
  for (const Record& r : report.records) {
    for (const auto& field : r.fields) {
      if (std::find(header.begin(), header.end(), field.first) == header.end()) {
        header.push_back(field.first);
      }
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << csv_escape(header[i]);
  }
  out << '\n';
  for (const Record& r : report.records) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) {
        out << ',';
      }
      for (const auto& field : r.fields) {
        if (field.first == header[i]) {
          out << value_to_csv(field.second);
          break;
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

} // namespace egue::cli

#include "egue/cli/run_config.hpp"

#include "egue/errors.hpp"

#include <set>

namespace egue::cli {

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view text, const std::pair<E, std::string_view> (&names)[N],
             const char* what) {
  for (const auto& [value, name] : names) {
    if (name == text) {
      return value;
    }
  }
  std::string options;
  for (const auto& entry : names) {
    options += (options.empty() ? "" : "|") + std::string(entry.second);
  }
  throw ConfigError(std::string("unknown ") + what + " '" + std::string(text) +
                    "' (expected " + options + ")");
}

template <class E, std::size_t N>
std::string_view enum_name(E value, const std::pair<E, std::string_view> (&names)[N]) {
  for (const auto& [v, name] : names) {
    if (v == value) {
      return name;
    }
  }
  return "unknown";
}

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::table1, "table1"},
    {Command::moments, "moments"},
    {Command::verify, "verify"},
    {Command::histogram, "histogram"}};
constexpr std::pair<Method, std::string_view> kMethods[] = {
    {Method::exact, "exact"},
    {Method::asymp, "asymp"},
    {Method::dilute, "dilute"},
    {Method::wick, "wick"},
    {Method::mc, "mc"}};
constexpr std::pair<OutputFormat, std::string_view> kFormats[] = {
    {OutputFormat::csv, "csv"}, {OutputFormat::json, "json"}};

template <class T> T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

} // namespace

std::string_view to_string(Command c) { return enum_name(c, kCommands); }
std::string_view to_string(Method m) { return enum_name(m, kMethods); }
std::string_view to_string(OutputFormat f) { return enum_name(f, kFormats); }
Command parse_command(std::string_view t) { return parse_enum(t, kCommands, "command"); }
Method parse_method(std::string_view t) { return parse_enum(t, kMethods, "method"); }
OutputFormat parse_format(std::string_view t) { return parse_enum(t, kFormats, "format"); }

nlohmann::json params_json(const ModelParams& p, Mode mode) {
  return {{"N", p.N}, {"m", p.m}, {"k", p.k}, {"k0", p.k0},
          {"vh2", p.vh2}, {"vo2", p.vo2}, {"mode", std::string(to_string(mode))}};
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = {{"command", std::string(to_string(c.command))},
                      {"N", c.params.N},
                      {"m", c.params.m},
                      {"k", c.params.k},
                      {"k0", c.params.k0},
                      {"vh2", c.params.vh2},
                      {"vo2", c.params.vo2},
                      {"mode", std::string(to_string(c.mode))},
                      {"method", std::string(to_string(c.method))},
                      {"format", std::string(to_string(c.output))},
                      {"out", c.out_path},
                      {"bins", c.bins},
                      {"workers", c.workers},
                      {"point", c.verify_point}};
  if (c.n_samples) {
    j["samples"] = *c.n_samples;
  }
  if (c.seed) {
    j["seed"] = *c.seed;
  }
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  static const std::set<std::string> known = {
      "command", "N", "m", "k", "k0", "vh2", "vo2", "mode", "method",
      "format", "out", "bins", "workers", "samples", "seed", "point"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
  RunConfig c;
  if (j.contains("command")) {
    c.command = parse_command(get_as<std::string>(j, "command"));
  }
  if (j.contains("N")) c.params.N = get_as<long>(j, "N");
  if (j.contains("m")) c.params.m = get_as<long>(j, "m");
  if (j.contains("k")) c.params.k = get_as<long>(j, "k");
  if (j.contains("k0")) c.params.k0 = get_as<long>(j, "k0");
  if (j.contains("vh2")) c.params.vh2 = get_as<double>(j, "vh2");
  if (j.contains("vo2")) c.params.vo2 = get_as<double>(j, "vo2");
  if (j.contains("mode")) {
    try {
      c.mode = parse_mode(get_as<std::string>(j, "mode"));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("method")) c.method = parse_method(get_as<std::string>(j, "method"));
  if (j.contains("format")) c.output = parse_format(get_as<std::string>(j, "format"));
  if (j.contains("out")) c.out_path = get_as<std::string>(j, "out");
  if (j.contains("bins")) c.bins = get_as<int>(j, "bins");
  if (j.contains("workers")) c.workers = get_as<int>(j, "workers");
  if (j.contains("samples")) c.n_samples = get_as<long>(j, "samples");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("point")) c.verify_point = get_as<bool>(j, "point");
  return c;
}

void check_complete(const RunConfig& c) {
  const bool randomized =
      c.command == Command::histogram ||
      (c.command == Command::moments && c.method == Method::mc);
  if (randomized && !c.seed) {
    throw ConfigError("randomized runs need an explicit --seed");
  }
  if (randomized && !c.n_samples) {
    throw ConfigError("randomized runs need --samples");
  }
  if (c.n_samples && *c.n_samples < 2) {
    throw ConfigError("--samples must be at least 2");
  }
  if (c.bins < 1) {
    throw ConfigError("--bins must be positive");
  }
}

} // namespace egue::cli

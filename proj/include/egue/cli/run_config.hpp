#pragma once

#include "egue/exact_moments.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace egue::cli {

/// Invalid or incomplete run configuration (exit status 2).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Command { table1, moments, verify, histogram };
enum class Method { exact, asymp, dilute, wick, mc };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c);
std::string_view to_string(Method m);
std::string_view to_string(OutputFormat f);
Command parse_command(std::string_view text);
Method parse_method(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct RunConfig {
  Command command = Command::moments;
  ModelParams params{20, 10, 2, 1, 1.0, 1.0};
  Mode mode = Mode::removal;
  Method method = Method::exact;
  std::optional<long> n_samples;
  std::optional<std::uint64_t> seed;
  OutputFormat output = OutputFormat::csv;
  std::string out_path; ///< empty: standard output
  int bins = 20;
  int workers = 0;
  /// verify: check only `params` in `mode` instead of the default grid.
  bool verify_point = false;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys and ill-typed values are
/// rejected with ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);

/// Checks the method-specific requirements (seed and sample count for
/// randomized methods).
void check_complete(const RunConfig& config);

nlohmann::json params_json(const ModelParams& params, Mode mode);

} // namespace egue::cli

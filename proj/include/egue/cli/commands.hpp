#pragma once

#include "egue/cli/report.hpp"
#include "egue/cli/run_config.hpp"
#include "egue/exact_moments.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace egue::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;

/// One published row: (N, m, k, k0) with xi, k40, k04, k31, k13, k22.
struct Table1Row {
  long N, m, k, k0;
  std::array<double, 6> published;
  std::string note;
};

const std::vector<Table1Row>& table1_rows();

/// Absolute tolerances for the xi..k13 columns and for k22.
inline constexpr double kTable1Tolerance = 0.005;
inline constexpr double kTable1K22Tolerance = 0.01;

Report cmd_table1();

Report cmd_moments(const RunConfig& config);

using ClosedFormProvider = std::function<BivariateMoments(const ModelParams&, Mode)>;

struct VerifyOptions {
  std::vector<std::pair<ModelParams, Mode>> grid;
  /// Monte Carlo consistency runs only when both are set.
  std::optional<long> n_samples;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  double relative_tolerance = 1e-10;
  double factorization_tolerance = 1e-12;
  double mc_sigmas = 3.0;
  ClosedFormProvider closed_form; ///< empty: exact_moments
};

/// (6,3,2,1), (7,3,2,1), (8,4,2,2), (8,4,3,1), (8,5,2,1), each in removal
/// and addition mode.
std::vector<std::pair<ModelParams, Mode>> default_verify_grid();

Report cmd_verify(const VerifyOptions& options);

Report cmd_histogram(const RunConfig& config);

/// Dispatches on config.command. verify checks the default grid unless
/// config.verify_point is set.
Report run(const RunConfig& config);

void write_report(const Report& report, OutputFormat format, std::ostream& out);

} // namespace egue::cli

// egue-strength: closed-form, oracle and Monte Carlo moments of transition
// strength densities for EGUE(k) Hamiltonians and k0-particle operators.

#include "egue/cli/commands.hpp"
#include "egue/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using egue::cli::ConfigError;
using egue::cli::RunConfig;

struct Flags {
  long N = 0, m = 0, k = 0, k0 = 0;
  double vh2 = 1.0, vo2 = 1.0;
  std::string mode, method, format, out, config_path;
  long samples = 0;
  std::uint64_t seed = 0;
  int bins = 0, workers = 0;
};

void add_model_flags(CLI::App& app, Flags& f) {
  app.add_option("--N", f.N, "single-particle states");
  app.add_option("--m", f.m, "fermions in the initial space");
  app.add_option("--k", f.k, "body rank of the Hamiltonian");
  app.add_option("--k0", f.k0, "particles removed or added by the operator");
  app.add_option("--vh2", f.vh2, "Hamiltonian variance scale");
  app.add_option("--vo2", f.vo2, "operator variance scale");
  app.add_option("--mode", f.mode, "removal | addition");
  app.add_option("--samples", f.samples, "Monte Carlo samples");
  app.add_option("--seed", f.seed, "Monte Carlo seed (required for randomized runs)");
  app.add_option("--workers", f.workers, "worker threads (0 = all cores)");
}

void add_output_flags(CLI::App& app, Flags& f) {
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--out", f.out, "output file (default: stdout)");
  app.add_option("--config", f.config_path, "JSON run configuration");
}

RunConfig resolve(const CLI::App& sub, const Flags& f, egue::cli::Command command) {
  RunConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      throw ConfigError("cannot open config file " + f.config_path);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    c = egue::cli::run_config_from_json(j);
  }
  c.command = command;
  const auto given = [&](const char* name) {
    const CLI::Option* opt = sub.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--N")) c.params.N = f.N;
  if (given("--m")) c.params.m = f.m;
  if (given("--k")) c.params.k = f.k;
  if (given("--k0")) c.params.k0 = f.k0;
  if (given("--vh2")) c.params.vh2 = f.vh2;
  if (given("--vo2")) c.params.vo2 = f.vo2;
  if (given("--mode")) {
    try {
      c.mode = egue::parse_mode(f.mode);
    } catch (const egue::DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (given("--method")) c.method = egue::cli::parse_method(f.method);
  if (given("--format")) c.output = egue::cli::parse_format(f.format);
  if (given("--out")) c.out_path = f.out;
  if (given("--samples")) c.n_samples = f.samples;
  if (given("--seed")) c.seed = f.seed;
  if (given("--bins")) c.bins = f.bins;
  if (given("--workers")) c.workers = f.workers;
  if (command == egue::cli::Command::verify &&
      (given("--N") || given("--m") || given("--k") || given("--k0") || given("--mode"))) {
    c.verify_point = true;
  }
  egue::cli::check_complete(c);
  return c;
}

void print_error(const char* kind, const std::string& message) {
  nlohmann::json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments and cumulants of transition strength densities for EGUE(k)"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* table1 = app.add_subcommand("table1", "reproduce the published cumulant table");
  add_output_flags(*table1, flags);

  CLI::App* moments = app.add_subcommand("moments", "moments and cumulants for one model");
  add_model_flags(*moments, flags);
  add_output_flags(*moments, flags);
  moments->add_option("--method", flags.method, "exact | asymp | dilute | wick | mc");

  CLI::App* verify = app.add_subcommand("verify", "closed forms against the Wick oracle (and MC)");
  add_model_flags(*verify, flags);
  add_output_flags(*verify, flags);

  CLI::App* histogram = app.add_subcommand("histogram", "binned bivariate strength density");
  add_model_flags(*histogram, flags);
  add_output_flags(*histogram, flags);
  histogram->add_option("--bins", flags.bins, "bins per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : egue::cli::kExitConfigError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const auto command = egue::cli::parse_command(sub->get_name());
    const RunConfig config = resolve(*sub, flags, command);
    const egue::cli::Report report = egue::cli::run(config);
    if (config.out_path.empty()) {
      egue::cli::write_report(report, config.output, std::cout);
    } else {
      std::ofstream out(config.out_path);
      if (!out) {
        throw ConfigError("cannot write " + config.out_path);
      }
      egue::cli::write_report(report, config.output, out);
    }
    return report.exit_code;
  } catch (const ConfigError& e) {
    print_error("config", e.what());
  } catch (const egue::CostGuardError& e) {
    print_error("cost-guard", e.what());
  } catch (const egue::DomainError& e) {
    print_error("domain", e.what());
  }
  return egue::cli::kExitConfigError;
}

#include "egue/cli/commands.hpp"
#include "egue/cli/report.hpp"
#include "egue/cli/run_config.hpp"
#include "egue/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace egue;
using namespace egue::cli;

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  const std::string out_file = "test_cli_stdout.txt";
  const std::string cmd = std::string(EGUE_CLI_PATH) + " " + args + " > " + out_file +
                          " 2> test_cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  if (stdout_text) {
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    *stdout_text = buf.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("format_double round-trips") {
  for (const double x : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 2970.0, -0.0}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("moment records survive CSV and JSON") {
  RunConfig c;
  c.params = {20, 10, 2, 1};
  const Report r = cmd_moments(c);
  const BivariateMoments e = exact_moments(c.params, Mode::removal);

  std::ostringstream csv;
  write_report(r, OutputFormat::csv, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  const std::vector<std::string> header = split_line(line);
  REQUIRE(header.size() == 7);
  CHECK(header[0] == "quantity");
  CHECK(header[3] == "value");
  int rows = 0;
  while (std::getline(lines, line)) {
    const std::vector<std::string> cells = split_line(line);
    REQUIRE(cells.size() == header.size());
    if (cells[1].empty()) {
      continue; // cumulant rows
    }
    const int P = std::stoi(cells[1]), Q = std::stoi(cells[2]);
    CHECK(std::strtod(cells[3].c_str(), nullptr) == e.at(P, Q));
    ++rows;
  }
  CHECK(rows == 9);

  std::ostringstream js;
  write_report(r, OutputFormat::json, js);
  const nlohmann::json j = nlohmann::json::parse(js.str());
  CHECK(j["meta"]["command"] == "moments");
  CHECK(j["meta"]["params"]["N"] == 20);
  bool saw_m22 = false;
  for (const auto& rec : j["records"]) {
    if (rec["quantity"] == "M22") {
      saw_m22 = true;
      CHECK(rec["provenance"] == "exact-hybrid");
      CHECK(rec["value"].get<double>() == e.m22);
    }
    if (rec["quantity"] == "M11") {
      CHECK(rec["provenance"] == "exact");
      CHECK(rec["std_error"].is_null());
    }
  }
  CHECK(saw_m22);
}

TEST_CASE("CSV escapes awkward strings") {
  Report r;
  r.records.push_back(Record{}.add("note", "a,b \"c\"").add("x", 1.5));
  r.records.push_back(Record{}.add("y", true));
  const std::string csv = to_csv(r);
  CHECK(csv == "note,x,y\n\"a,b \"\"c\"\"\",1.5,\n,,true\n");
}

TEST_CASE("run configuration round-trips through JSON") {
  RunConfig c;
  c.command = Command::histogram;
  c.params = {8, 4, 2, 2, 0.5, 2.0};
  c.mode = Mode::addition;
  c.method = Method::mc;
  c.n_samples = 500;
  c.seed = 18446744073709551615ULL;
  c.output = OutputFormat::json;
  c.out_path = "x.json";
  c.bins = 7;
  c.workers = 2;
  c.verify_point = true;
  CHECK(run_config_from_json(to_json(c)) == c);
  CHECK(run_config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
  CHECK(run_config_from_json(nlohmann::json::object()) == RunConfig{});
  CHECK_THROWS_AS(run_config_from_json({{"samplez", 3}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json({{"N", "twenty"}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json({{"mode", "sideways"}}), ConfigError);
}

TEST_CASE("randomized runs require a seed and a sample count") {
  RunConfig c;
  c.method = Method::mc;
  CHECK_THROWS_AS(check_complete(c), ConfigError);
  c.seed = 1;
  CHECK_THROWS_AS(check_complete(c), ConfigError);
  c.n_samples = 1;
  CHECK_THROWS_AS(check_complete(c), ConfigError);
  c.n_samples = 50;
  CHECK_NOTHROW(check_complete(c));
  c.method = Method::exact;
  c.seed.reset();
  c.n_samples.reset();
  CHECK_NOTHROW(check_complete(c));
}

TEST_CASE("table1 command reproduces the published cumulants") {
  const Report r = cmd_table1();
  CHECK(r.exit_code == kExitSuccess);
  CHECK(table1_rows().size() == 15);
  CHECK(r.records.size() == 15 * 6);
  const nlohmann::json j = to_json(r);
  for (const auto& rec : j["records"]) {
    CHECK(rec["pass"] == true);
  }
}

TEST_CASE("verify passes on the default grid and catches a corrupted kernel") {
  VerifyOptions options;
  options.grid = default_verify_grid();
  CHECK(options.grid.size() == 10);
  const Report good = cmd_verify(options);
  CHECK(good.exit_code == kExitSuccess);

  options.closed_form = [](const ModelParams& p, Mode mode) {
    const Z11Provider bad = [](long N, long m, long k0, long k, long nu) {
      return z11_wide(N, m, k0, k, nu) * WideFloat(nu == 0 ? 1.0 : 0.999);
    };
    return exact_moments(p, mode, bad);
  };
  const Report bad = cmd_verify(options);
  CHECK(bad.exit_code == kExitVerificationFailure);
}

TEST_CASE("verify with Monte Carlo") {
  VerifyOptions options;
  options.grid = {{ModelParams{6, 3, 2, 1}, Mode::removal}};
  options.n_samples = 400;
  options.seed = 5;
  const Report r = cmd_verify(options);
  CHECK(r.exit_code == kExitSuccess);
  CHECK(r.records.size() > 15);
}

TEST_CASE("histogram command") {
  RunConfig c;
  c.command = Command::histogram;
  c.params = {6, 3, 2, 1};
  c.n_samples = 100;
  c.seed = 3;
  c.bins = 5;
  const Report r = run(c);
  CHECK(r.exit_code == kExitSuccess);
  CHECK(r.records.size() == 25);
  CHECK(r.summary.contains("xi"));
}

TEST_CASE("binary exit codes") {
  std::string out;
  CHECK(run_cli("table1 --format csv", &out) == kExitSuccess);
  CHECK(out.rfind("N,m,k,k0", 0) == 0);
  CHECK(run_cli("moments --N 6 --m 3 --k 2 --k0 1 --method wick --format json", &out) ==
        kExitSuccess);
  CHECK(nlohmann::json::parse(out)["records"].size() >= 9);
  CHECK(run_cli("moments --N 20 --m 10 --k 2 --k0 1 --method wick") == kExitConfigError);
  CHECK(run_cli("moments --N 6 --m 3 --k 2 --k0 1 --method mc --samples 10") ==
        kExitConfigError);
  CHECK(run_cli("moments --N 6 --m 7 --k 2 --k0 1") == kExitConfigError);
  CHECK(run_cli("moments --mode sideways") == kExitConfigError);
  CHECK(run_cli("nonsense") == kExitConfigError);
  CHECK(run_cli("verify --N 7 --m 3 --k 2 --k0 1 --mode addition --format json", &out) ==
        kExitSuccess);
  const nlohmann::json point = nlohmann::json::parse(out);
  CHECK(point["records"].size() == 10);
  CHECK(point["records"][0]["mode"] == "addition");
  CHECK(run_cli("verify --N 20 --m 10 --k 2 --k0 1") == kExitConfigError);

  {
    std::ofstream cfg("test_cli_config.json");
    cfg << R"({"N": 6, "m": 3, "k": 2, "k0": 1, "method": "mc", "samples": 40, "seed": 9})";
  }
  std::string from_file, overridden;
  CHECK(run_cli("moments --config test_cli_config.json --format json", &from_file) ==
        kExitSuccess);
  CHECK(run_cli("moments --config test_cli_config.json --seed 10 --format json", &overridden) ==
        kExitSuccess);
  const nlohmann::json a = nlohmann::json::parse(from_file);
  const nlohmann::json b = nlohmann::json::parse(overridden);
  CHECK(a["meta"]["params"]["seed"] == 9);
  CHECK(b["meta"]["params"]["seed"] == 10);
  CHECK(a["records"][0]["value"] != b["records"][0]["value"]);
  std::string again;
  run_cli("moments --config test_cli_config.json --format json --workers 2", &again);
  CHECK(nlohmann::json::parse(again)["records"] == a["records"]);
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tailcr/errors.hpp"
#include "tailcr/io.hpp"
#include "tailcr/montecarlo.hpp"
#include "tailcr/rng.hpp"
#include "tailcr/version.hpp"

using namespace tailcr;

namespace {

std::string parse_error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_dataset(in, "mem");
  } catch (const io_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("dataset parsing accepts the documented schema") {
  std::istringstream in(
      "z,delta,cause\n"
      "1.0,1,1\n"
      "2.0,0,\n"
      "2.5,0,0\n"
      "3.0,1,2\n");
  const CompetingRisksSample sample = read_dataset(in, "mem");
  CHECK(sample.size() == 4);
  CHECK(sample.num_causes() == 2);
  CHECK(sample.observations()[0].delta);
  CHECK_FALSE(sample.observations()[1].delta);
  CHECK(sample.observations()[3].cause == 2);
}

TEST_CASE("dataset parse failures carry line numbers") {
  CHECK(parse_error_of("z,delta\n1,1,1\n").find("mem:1") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\n1.0,1,\n").find("mem:2") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\n1.0,2,1\n").find("delta") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\n-1.0,1,1\n").find("positive") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\n1.0,0,2\n").find("mem:2") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\nabc,1,1\n").find("mem:2") != std::string::npos);
  CHECK(parse_error_of("z,delta,cause\n") == "mem: no observations");
}

TEST_CASE("dataset round trip") {
  std::istringstream in(
      "z,delta,cause\n"
      "0.125,1,1\n"
      "2,0,\n"
      "3.0000000000000004,1,3\n");
  const CompetingRisksSample sample = read_dataset(in, "mem");
  const std::string text = serialize_dataset(sample);
  std::istringstream again(text);
  const CompetingRisksSample reparsed = read_dataset(again, "mem2");
  CHECK(serialize_dataset(reparsed) == text);
  CHECK(reparsed.observations() == sample.observations());
}

TEST_CASE("format_double round-trips doubles exactly") {
  SplitMix64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const double x = (rng.next_uniform() - 0.5) * std::pow(10.0, (rng.next_uniform() - 0.5) * 60);
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("config serialization is canonical and round-trips") {
  const ScenarioConfig preset = find_preset("burr-cfg1-c07");
  const std::string text = serialize_config(preset);
  const ScenarioConfig parsed = parse_config(text, "mem");
  CHECK(serialize_config(parsed) == text);
  CHECK(parsed.name == preset.name);
  CHECK(parsed.n == preset.n);
  CHECK(parsed.master_seed == preset.master_seed);
  CHECK(parsed.kn_grid == preset.kn_grid);
  CHECK(parsed.specs.size() == preset.specs.size());
  CHECK(parsed.censoring.has_value());
  CHECK(parsed.censoring->tau_c == preset.censoring->tau_c);
}

TEST_CASE("config parsing rejects bad inputs with the right error class") {
  CHECK_THROWS_AS(parse_config("{not json", "mem"), io_error);
  CHECK_THROWS_AS(parse_config("{}", "mem"), io_error);  // missing keys
  // weights off: semantic error -> invalid_config
  const std::string bad = R"({
    "n": 100, "n_rep": 2,
    "kn_grid": [10],
    "sub_distributions": [{"family": "frechet", "gamma": 0.2, "weight": 0.5}]
  })";
  try {
    parse_config(bad, "mem");
    CHECK(false);
  } catch (const stat_error& e) {
    CHECK(e.code() == errc::invalid_config);
  }
  const std::string bad_estimator = R"({
    "n": 100, "n_rep": 2,
    "kn_grid": [10],
    "estimators": ["hill"],
    "sub_distributions": [{"family": "frechet", "gamma": 0.2, "weight": 1.0}]
  })";
  CHECK_THROWS_AS(parse_config(bad_estimator, "mem"), stat_error);
}

TEST_CASE("config defaults fill optional fields") {
  const std::string minimal = R"({
    "n": 100, "n_rep": 2,
    "kn_grid": [10, 20],
    "sub_distributions": [{"family": "frechet", "gamma": 0.2, "weight": 1.0}]
  })";
  const ScenarioConfig config = parse_config(minimal, "mem");
  CHECK(config.name == "custom");
  CHECK(config.estimators.size() == 3);
  CHECK(config.target_cause == 1);
  CHECK_FALSE(config.censoring.has_value());
  CHECK(config.master_seed == 0);
}

TEST_CASE("report serialization round-trips byte for byte") {
  ScenarioConfig config = find_preset("smoke");
  config.n_rep = 3;
  const MonteCarloReport report = run_scenario(config);
  const RunManifest manifest = make_manifest(config);
  const std::string text = serialize_report(report, manifest);
  CHECK(text.rfind("kn,estimator,median_bias,mse,mean,sd,failures\n", 0) == 0);

  const ParsedReport parsed = parse_report(text, "mem");
  CHECK(parsed.manifest == manifest);
  CHECK(serialize_report(parsed.report, parsed.manifest) == text);
}

TEST_CASE("report with absent aggregates keeps empty cells") {
  MonteCarloReport report;
  ReportRow row;
  row.kn = 10;
  row.estimator = EstimatorId::aj;
  row.failure_count = 5;
  report.rows.push_back(row);
  RunManifest manifest{kVersion, 1, "00000000deadbeef", "1970-01-01T00:00:00Z"};
  const std::string text = serialize_report(report, manifest);
  CHECK(text.find("10,aj,,,,,5\n") != std::string::npos);
  const ParsedReport parsed = parse_report(text, "mem");
  CHECK_FALSE(parsed.report.rows[0].mse.has_value());
  CHECK(parsed.report.rows[0].failure_count == 5);
  CHECK(serialize_report(parsed.report, parsed.manifest) == text);
}

TEST_CASE("manifest timestamp honors SOURCE_DATE_EPOCH and defaults to the epoch") {
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(make_timestamp() == "1970-01-01T00:00:00Z");
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  CHECK(make_timestamp() == "2023-11-14T22:13:20Z");
  unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("scenario hash identifies the effective config") {
  ScenarioConfig a = find_preset("smoke");
  ScenarioConfig b = a;
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a).size() == 16);
  b.master_seed += 1;
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("atomic_write_file leaves no temporary behind") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tailcr_io_test";
  fs::create_directories(dir);
  const fs::path target = dir / "report.csv";
  atomic_write_file(target.string(), "hello\n");
  CHECK(fs::exists(target));
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "hello\n");
  atomic_write_file(target.string(), "second\n");
  std::ifstream in2(target);
  std::string content2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
  CHECK(content2 == "second\n");
  fs::remove_all(dir);
}

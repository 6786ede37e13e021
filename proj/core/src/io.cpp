#include "tailcr/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tailcr/errors.hpp"
#include "tailcr/version.hpp"

namespace tailcr {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& message) {
  throw io_error(source + ":" + std::to_string(line) + ": " + message);
}

double parse_positive_double(std::string_view field, const std::string& source, std::size_t line,
                             const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    fail_at(source, line, std::string(what) + " does not parse as a number");
  }
  if (!(value > 0.0)) {
    fail_at(source, line, std::string(what) + " must be positive");
  }
  return value;
}

long parse_int(std::string_view field, const std::string& source, std::size_t line,
               const char* what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    fail_at(source, line, std::string(what) + " does not parse as an integer");
  }
  return value;
}

std::optional<double> parse_optional_double(std::string_view field, const std::string& source,
                                            std::size_t line, const char* what) {
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    fail_at(source, line, std::string(what) + " does not parse as a number");
  }
  return value;
}

json spec_to_json(const SubDistributionSpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  j["gamma"] = spec.gamma;
  j["weight"] = spec.weight;
  if (spec.family == TailFamily::burr) {
    j["tau"] = spec.tau;
    j["beta"] = spec.beta;
  }
  return j;
}

SubDistributionSpec spec_from_json(const json& j) {
  SubDistributionSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.gamma = j.at("gamma").get<double>();
  spec.weight = j.at("weight").get<double>();
  if (spec.family == TailFamily::burr) {
    spec.tau = j.at("tau").get<double>();
    spec.beta = j.at("beta").get<double>();
  }
  return spec;
}

json censoring_to_json(const CensoringSpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  j["gamma"] = spec.gamma_c;
  if (spec.family == TailFamily::burr) {
    j["tau"] = spec.tau_c;
    j["beta"] = spec.beta;
  }
  return j;
}

CensoringSpec censoring_from_json(const json& j) {
  CensoringSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.gamma_c = j.at("gamma").get<double>();
  if (spec.family == TailFamily::burr) {
    spec.tau_c = j.at("tau").get<double>();
    spec.beta = j.at("beta").get<double>();
  }
  return spec;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

CompetingRisksSample read_dataset(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw io_error(source_name + ":1: empty file, expected header 'z,delta,cause'");
  }
  ++line_no;
  if (trim(line) != "z,delta,cause") {
    fail_at(source_name, line_no, "expected header 'z,delta,cause'");
  }
  std::vector<Observation> observations;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      fail_at(source_name, line_no, "expected 3 fields 'z,delta,cause'");
    }
    const double z = parse_positive_double(fields[0], source_name, line_no, "z");
    const long delta = parse_int(fields[1], source_name, line_no, "delta");
    if (delta != 0 && delta != 1) {
      fail_at(source_name, line_no, "delta must be 0 or 1");
    }
    if (delta == 1) {
      if (fields[2].empty()) {
        fail_at(source_name, line_no, "uncensored row needs a cause");
      }
      const long cause = parse_int(fields[2], source_name, line_no, "cause");
      if (cause < 1) {
        fail_at(source_name, line_no, "cause must be a positive integer when delta = 1");
      }
      observations.push_back(Observation::event(z, static_cast<int>(cause)));
    } else {
      if (!fields[2].empty()) {
        const long cause = parse_int(fields[2], source_name, line_no, "cause");
        if (cause != 0) {
          fail_at(source_name, line_no, "censored row must have empty or zero cause");
        }
      }
      observations.push_back(Observation::censored(z));
    }
  }
  if (observations.empty()) {
    throw io_error(source_name + ": no observations");
  }
  return CompetingRisksSample::with_inferred_causes(std::move(observations));
}

CompetingRisksSample read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw io_error(path + ": cannot open file");
  }
  return read_dataset(in, path);
}

std::string serialize_dataset(const CompetingRisksSample& sample) {
  std::string out = "z,delta,cause\n";
  for (const Observation& o : sample.observations()) {
    out += format_double(o.z);
    out += o.delta ? ",1," + std::to_string(o.cause) : ",0,";
    out += '\n';
  }
  return out;
}

std::string serialize_config(const ScenarioConfig& config) {
  json j;
  j["name"] = config.name;
  j["n"] = config.n;
  j["n_rep"] = config.n_rep;
  j["master_seed"] = config.master_seed;
  j["target_cause"] = config.target_cause;
  j["kn_grid"] = config.kn_grid;
  json estimators = json::array();
  for (EstimatorId id : config.estimators) {
    estimators.push_back(estimator_name(id));
  }
  j["estimators"] = estimators;
  json specs = json::array();
  for (const SubDistributionSpec& spec : config.specs) {
    specs.push_back(spec_to_json(spec));
  }
  j["sub_distributions"] = specs;
  if (config.censoring) {
    j["censoring"] = censoring_to_json(*config.censoring);
  }
  return j.dump(2) + "\n";
}

ScenarioConfig parse_config(const std::string& json_text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw io_error(source_name + ": " + e.what());
  }
  ScenarioConfig config;
  try {
    config.name = j.value("name", std::string("custom"));
    config.n = j.at("n").get<std::size_t>();
    config.n_rep = j.at("n_rep").get<std::size_t>();
    config.master_seed = j.value("master_seed", std::uint64_t{0});
    config.target_cause = j.value("target_cause", 1);
    if (j.contains("kn_grid")) {
      config.kn_grid = j.at("kn_grid").get<std::vector<std::size_t>>();
    }
    if (j.contains("estimators")) {
      for (const json& name : j.at("estimators")) {
        config.estimators.push_back(estimator_from_name(name.get<std::string>()));
      }
    } else {
      config.estimators = {EstimatorId::aj, EstimatorId::bdfg, EstimatorId::km};
    }
    for (const json& spec : j.at("sub_distributions")) {
      config.specs.push_back(spec_from_json(spec));
    }
    if (j.contains("censoring")) {
      config.censoring = censoring_from_json(j.at("censoring"));
    }
  } catch (const json::exception& e) {
    throw io_error(source_name + ": " + e.what());
  }
  config.validate();
  return config;
}

ScenarioConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw io_error(path + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string make_timestamp() {
  long long epoch = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    const std::string_view sv(env);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), epoch);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
      epoch = 0;
    }
  }
  const std::time_t t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string scenario_hash(const ScenarioConfig& config) {
  const std::string canonical = serialize_config(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunManifest make_manifest(const ScenarioConfig& config) {
  RunManifest manifest;
  manifest.tool_version = kVersion;
  manifest.master_seed = config.master_seed;
  manifest.scenario_hash = scenario_hash(config);
  manifest.timestamp = make_timestamp();
  return manifest;
}

std::string serialize_report(const MonteCarloReport& report, const RunManifest& manifest) {
  std::string out = "kn,estimator,median_bias,mse,mean,sd,failures\n";
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const ReportRow& row : report.rows) {
    out += std::to_string(row.kn);
    out += ',';
    out += estimator_name(row.estimator);
    out += ',';
    out += cell(row.median_bias);
    out += ',';
    out += cell(row.mse);
    out += ',';
    out += cell(row.mean_estimate);
    out += ',';
    out += cell(row.sd_estimate);
    out += ',';
    out += std::to_string(row.failure_count);
    out += '\n';
  }
  out += "# tool_version: " + manifest.tool_version + "\n";
  out += "# master_seed: " + std::to_string(manifest.master_seed) + "\n";
  out += "# scenario_hash: " + manifest.scenario_hash + "\n";
  out += "# timestamp: " + manifest.timestamp + "\n";
  return out;
}

ParsedReport parse_report(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw io_error(source_name + ":1: empty report");
  }
  ++line_no;
  if (trim(line) != "kn,estimator,median_bias,mse,mean,sd,failures") {
    fail_at(source_name, line_no, "unexpected report header");
  }
  ParsedReport parsed;
  bool in_footer = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      in_footer = true;
      const std::size_t colon = trimmed.find(':');
      if (colon == std::string_view::npos) {
        fail_at(source_name, line_no, "malformed manifest line");
      }
      const std::string key(trim(trimmed.substr(1, colon - 1)));
      const std::string value(trim(trimmed.substr(colon + 1)));
      if (key == "tool_version") {
        parsed.manifest.tool_version = value;
      } else if (key == "master_seed") {
        parsed.manifest.master_seed =
            static_cast<std::uint64_t>(parse_int(value, source_name, line_no, "master_seed"));
      } else if (key == "scenario_hash") {
        parsed.manifest.scenario_hash = value;
      } else if (key == "timestamp") {
        parsed.manifest.timestamp = value;
      } else {
        fail_at(source_name, line_no, "unknown manifest key '" + key + "'");
      }
      continue;
    }
    if (in_footer) {
      fail_at(source_name, line_no, "data row after manifest footer");
    }
    const auto fields = split_csv(trimmed);
    if (fields.size() != 7) {
      fail_at(source_name, line_no, "expected 7 fields");
    }
    ReportRow row;
    row.kn = static_cast<std::size_t>(parse_int(fields[0], source_name, line_no, "kn"));
    row.estimator = estimator_from_name(std::string(fields[1]));
    row.median_bias = parse_optional_double(fields[2], source_name, line_no, "median_bias");
    row.mse = parse_optional_double(fields[3], source_name, line_no, "mse");
    row.mean_estimate = parse_optional_double(fields[4], source_name, line_no, "mean");
    row.sd_estimate = parse_optional_double(fields[5], source_name, line_no, "sd");
    row.failure_count =
        static_cast<std::size_t>(parse_int(fields[6], source_name, line_no, "failures"));
    parsed.report.rows.push_back(row);
  }
  return parsed;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw io_error(tmp.string() + ": cannot open for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw io_error(tmp.string() + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw io_error(path + ": rename failed: " + ec.message());
  }
}

}  // namespace tailcr

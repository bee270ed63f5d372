#include "cheesebench/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cheesebench/errors.hpp"

namespace cheesebench {

using nlohmann::json;

namespace {

constexpr std::string_view kOverallNote = "overall = unweighted mean of per-environment success rates";
constexpr std::string_view kReferenceNote =
    "rodent_ref values are approximate reference anchors from published learning curves, not measured in "
    "these environments";

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

}  // namespace

double binomial_se(int n_success, int n_trials) {
  if (n_trials <= 0) throw UsageError("binomial_se needs n_trials > 0");
  const double p = static_cast<double>(n_success) / n_trials;
  return std::sqrt(p * (1.0 - p) / n_trials);
}

double rodent_reference_mean() {
  double sum = 0.0;
  for (const auto& s : all_paradigms()) sum += s.rodent_reference;
  return sum / static_cast<double>(kParadigmCount);
}

BenchReport summarize(std::span<const TrialRecord> records, std::span<const std::string> expected) {
  std::array<int, kParadigmCount> n{};
  std::array<int, kParadigmCount> wins{};
  for (const TrialRecord& r : records) {
    const auto p = paradigm_from_name(r.env);
    if (!p) throw ConfigError("record for unknown environment '" + r.env + "'");
    const auto i = static_cast<std::size_t>(*p);
    ++n[i];
    wins[i] += r.success ? 1 : 0;
  }

  BenchReport out;
  for (const std::string& name : expected) {
    const auto p = paradigm_from_name(name);
    if (p && n[static_cast<std::size_t>(*p)] == 0) out.warnings.push_back(name + ": no trial records, omitted");
  }

  std::array<std::vector<double>, kDimensionCount> by_dim;
  std::array<std::vector<std::string>, kDimensionCount> dim_envs;
  double sum = 0.0;
  for (const ParadigmSpec& spec : all_paradigms()) {
    const auto i = static_cast<std::size_t>(spec.id);
    if (n[i] == 0) continue;
    EnvResult e;
    e.env = std::string(spec.name);
    e.dimension = std::string(to_string(spec.dimension));
    e.n_trials = n[i];
    e.n_success = wins[i];
    e.p = static_cast<double>(wins[i]) / n[i];
    e.se = binomial_se(wins[i], n[i]);
    e.rodent_ref = spec.rodent_reference;
    e.delta = e.p - e.rodent_ref;
    sum += e.p;
    by_dim[static_cast<std::size_t>(spec.dimension)].push_back(e.p);
    dim_envs[static_cast<std::size_t>(spec.dimension)].push_back(e.env);
    out.envs.push_back(std::move(e));
  }
  out.overall = out.envs.empty() ? 0.0 : sum / static_cast<double>(out.envs.size());

  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    DimensionResult dr;
    dr.dimension = std::string(to_string(static_cast<CognitiveDimension>(d)));
    if (!by_dim[d].empty()) {
      double s = 0.0;
      for (double p : by_dim[d]) s += p;
      dr.p = s / static_cast<double>(by_dim[d].size());
    }
    dr.envs = dim_envs[d];
    out.profile.push_back(std::move(dr));
  }
  return out;
}

BenchReport rodent_reference_report() {
  std::vector<TrialRecord> records;
  for (const ParadigmSpec& spec : all_paradigms()) {
    const int wins = static_cast<int>(std::lround(spec.rodent_reference * 100));
    for (int t = 0; t < 100; ++t) records.push_back(TrialRecord{std::string(spec.name), t, t < wins});
  }
  return summarize(records);
}

std::string report_to_json(const BenchReport& r) {
  json envs = json::array();
  for (const EnvResult& e : r.envs) {
    envs.push_back({{"env", e.env},
                    {"dimension", e.dimension},
                    {"n_trials", e.n_trials},
                    {"n_success", e.n_success},
                    {"p", e.p},
                    {"se", e.se},
                    {"rodent_ref", e.rodent_ref},
                    {"delta", e.delta}});
  }
  json profile = json::array();
  for (const DimensionResult& d : r.profile) {
    profile.push_back({{"dimension", d.dimension},
                       {"p", d.p ? json(*d.p) : json(nullptr)},
                       {"envs", d.envs}});
  }
  const json doc = {
      {"schema", kReportSchema},
      {"overall", r.overall},
      {"overall_note", kOverallNote},
      {"reference_note", kReferenceNote},
      {"environments", std::move(envs)},
      {"profile", std::move(profile)},
      {"warnings", r.warnings},
  };
  return doc.dump(2) + "\n";
}

BenchReport report_from_json(std::string_view text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("report is not valid JSON");
  try {
    if (doc.at("schema").get<std::string>() != kReportSchema)
      throw ParseError("unsupported report schema " + doc.at("schema").dump());
    BenchReport r;
    r.overall = doc.at("overall").get<double>();
    for (const json& e : doc.at("environments")) {
      r.envs.push_back(EnvResult{e.at("env").get<std::string>(), e.at("dimension").get<std::string>(),
                                 e.at("n_trials").get<int>(), e.at("n_success").get<int>(), e.at("p").get<double>(),
                                 e.at("se").get<double>(), e.at("rodent_ref").get<double>(),
                                 e.at("delta").get<double>()});
    }
    for (const json& d : doc.at("profile")) {
      DimensionResult dr;
      dr.dimension = d.at("dimension").get<std::string>();
      if (!d.at("p").is_null()) dr.p = d.at("p").get<double>();
      dr.envs = d.at("envs").get<std::vector<std::string>>();
      r.profile.push_back(std::move(dr));
    }
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string report_to_csv(const BenchReport& r) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const EnvResult& e : r.envs) {
    out += e.env + ',' + e.dimension + ',' + std::to_string(e.n_trials) + ',' + std::to_string(e.n_success) + ',' +
           number(e.p) + ',' + number(e.se) + ',' + number(e.rodent_ref) + ',' + number(e.delta) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.flush();
  if (!f) throw IoError("write to " + path.string() + " failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace cheesebench

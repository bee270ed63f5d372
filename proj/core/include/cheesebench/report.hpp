#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cheesebench/harness.hpp"
#include "cheesebench/paradigm.hpp"

namespace cheesebench {

inline constexpr std::string_view kReportSchema = "cheesebench.report/1";
inline constexpr std::string_view kCsvHeader = "env,dimension,n_trials,n_success,p,se,rodent_ref,delta";

struct EnvResult {
  std::string env;
  std::string dimension;
  int n_trials = 0;
  int n_success = 0;
  double p = 0.0;
  double se = 0.0;
  double rodent_ref = 0.0;  // approximate reference, not measured here
  double delta = 0.0;       // p - rodent_ref

  friend bool operator==(const EnvResult&, const EnvResult&) = default;
};

struct DimensionResult {
  std::string dimension;
  std::optional<double> p;  // mean p over the dimension's environments present in the report
  std::vector<std::string> envs;

  friend bool operator==(const DimensionResult&, const DimensionResult&) = default;
};

struct BenchReport {
  std::vector<EnvResult> envs;          // canonical paradigm order
  double overall = 0.0;                 // unweighted mean of env p values
  std::vector<DimensionResult> profile; // always all six dimensions
  std::vector<std::string> warnings;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// sqrt(p (1 - p) / n) with p = n_success / n. n must be > 0.
double binomial_se(int n_success, int n_trials);

/// Mean of the nine stored rodent reference values.
double rodent_reference_mean();

/// Aggregates records per environment. Environments listed in `expected`
/// that have no records are left out with a warning. Throws ConfigError for
/// a record whose env is not a paradigm name.
BenchReport summarize(std::span<const TrialRecord> records, std::span<const std::string> expected = {});

/// A report in which every environment sits exactly at its rodent reference.
BenchReport rodent_reference_report();

std::string report_to_json(const BenchReport& r);
/// Throws ParseError.
BenchReport report_from_json(std::string_view text);
std::string report_to_csv(const BenchReport& r);

/// Writes `content` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);
/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace cheesebench

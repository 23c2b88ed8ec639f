#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "atem/reference_tables.hpp"
#include "atem/spectrum.hpp"
#include "atem/wavefunction.hpp"

namespace atem {

/// Malformed or out-of-range job specification.
class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Artifact { spectrum, wavefunctions, plotdata, table_check };

/// Problem in serialized form. Numbers are decimal strings so they survive
/// parsing at any precision. Either alpha/beta or s_coeffs describes the
/// envelope, not both.
struct ProblemDescription {
  /// Ascending coefficients of V.
  std::vector<std::string> potential;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  /// Ascending coefficients of s.
  std::optional<std::vector<std::string>> s_coeffs;
  long energy_scale = 1;

  [[nodiscard]] ProblemSpec build(int precision_bits) const;

  friend bool operator==(const ProblemDescription&, const ProblemDescription&) = default;
};

struct ScanDescription {
  /// Defaults to the sampled minimum of V / energy_scale.
  std::optional<std::string> e_min;
  std::string e_max;
  int grid_points = 512;
  std::vector<int> m_schedule{30, 40, 60, 80, 100, 120};
  MConvention m_convention = MConvention::taylor_order;
  int target_digits = 15;
  std::optional<Channel> channel;
  std::optional<std::string> bisection_tol;
  std::string match_relative = "1e-3";
  std::string match_absolute = "1e-6";
  int max_grid_refinements = 3;
  int threads = 0;

  [[nodiscard]] ScanConfig build(const ProblemSpec& problem, int precision_bits) const;

  friend bool operator==(const ScanDescription&, const ScanDescription&) = default;
};

struct WavefunctionDescription {
  /// Spectrum states (merged ordinal) to export; empty means none.
  std::vector<int> states;
  int truncation_order = kDefaultTruncationOrder;
  std::string x_min = "-5";
  std::string x_max = "5";
  int points = 401;
  std::string quad_tol = "1e-20";

  friend bool operator==(const WavefunctionDescription&, const WavefunctionDescription&) = default;
};

/// Which reference values a table-check compares against.
struct ReferenceSelection {
  TableId table = TableId::t1;
  std::string group;

  friend bool operator==(const ReferenceSelection&, const ReferenceSelection&) = default;
};

struct JobSpec {
  std::string name = "job";
  ProblemDescription problem;
  ScanDescription scan;
  WavefunctionDescription wavefunctions;
  std::vector<Artifact> outputs{Artifact::spectrum};
  std::optional<int> precision_bits;
  std::string output_dir = ".";
  std::optional<ReferenceSelection> reference;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Strict parse: unknown fields, wrong types and invalid values raise
/// SchemaError.
JobSpec parse_job_spec(const std::string& json_text);
JobSpec load_job_spec(const std::filesystem::path& path);
/// Inverse of parse_job_spec; parse_job_spec(serialize(s)) == s field-wise.
std::string serialize_job_spec(const JobSpec& spec);

/// Settings that sit above the spec file.
struct RunOverrides {
  std::optional<int> precision_bits;
  /// Replaces the top of the schedule; smaller entries are kept.
  std::optional<int> m;
  std::optional<std::filesystem::path> output_dir;
  int csv_digits = 21;
};

/// Precision resolution: override, then the spec, then ATEM_PRECISION_BITS,
/// then the library default.
int resolve_precision(const JobSpec& spec, const RunOverrides& overrides);

struct StateWavefunction {
  int state = 0;
  WavefunctionSeries series;
  std::vector<SamplePoint> samples;
};

struct TableComparison {
  std::string group;
  int state = 0;
  std::string computed;
  std::string reference;
  std::string column;
  int matching_digits = 0;
  int required_digits = 0;
  bool pass = false;
};

struct JobResult {
  JobSpec spec;
  int precision_bits = kDefaultPrecisionBits;
  std::vector<EigenvalueRecord> spectrum;
  /// Renormalization events at each record's energy and final depth.
  std::vector<std::size_t> renorm_counts;
  std::vector<StateWavefunction> wavefunctions;
  std::vector<TableComparison> table_check;
  std::optional<std::string> seed_warning;
  double spectrum_seconds = 0;
  double wavefunction_seconds = 0;

  [[nodiscard]] bool table_check_passed() const;
  [[nodiscard]] bool all_converged() const;
};

/// Computes everything the spec asks for without touching the filesystem.
JobResult execute_job(const JobSpec& spec, const RunOverrides& overrides = {});

/// Writes spectrum.csv, wavefunction_<n>.csv, plotdata.csv, table_check.csv
/// and job_report.json as requested. Returns the files written.
std::vector<std::filesystem::path> write_artifacts(const JobResult& result, const std::filesystem::path& dir,
                                                   int csv_digits);

/// Compares a spectrum with the validated column of a reference table.
std::vector<TableComparison> compare_with_table(const std::vector<EigenvalueRecord>& spectrum,
                                                const ReferenceSelection& selection, int csv_digits = 21);

std::string spectrum_csv(const std::vector<EigenvalueRecord>& spectrum, int digits);
std::string samples_csv(const std::vector<SamplePoint>& samples, int digits);
std::string table_check_csv(const std::vector<TableComparison>& rows);
std::string job_report_json(const JobResult& result, int digits);

/// Number of sign changes in the sampled psi; exact zeros are skipped.
int count_nodes(const std::vector<SamplePoint>& samples);

struct TableReport {
  TableId table = TableId::t1;
  std::vector<TableComparison> rows;
  std::vector<std::string> notes;
  [[nodiscard]] bool passed() const;
};

/// Runs every preset job belonging to a table and compares the results.
TableReport reproduce_table(TableId table, const RunOverrides& overrides = {});
std::string format_table_report(const TableReport& report);

}  // namespace atem

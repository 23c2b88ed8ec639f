// atem: bound-state spectra of polynomial potentials from the command line.
//
//   atem run <spec.json>            run a job spec (or a preset name)
//   atem reproduce-table <t1|t2|t3> recompute a published table and compare
//   atem presets list               show built-in jobs
//
// Exit status: 0 success, 1 numeric failure, 2 usage or schema error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "atem/job.hpp"
#include "atem/presets.hpp"

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
  std::optional<int> precision_bits;
  std::optional<int> m;
  std::optional<std::string> output_dir;
  int digits = 21;

  [[nodiscard]] atem::RunOverrides overrides() const {
    atem::RunOverrides o;
    o.precision_bits = precision_bits;
    o.m = m;
    if (output_dir) o.output_dir = std::filesystem::path(*output_dir);
    o.csv_digits = digits;
    return o;
  }
};

int run_command(const std::string& target, const GlobalFlags& flags) {
  atem::JobSpec spec;
  if (std::filesystem::exists(target)) {
    spec = atem::load_job_spec(target);
  } else if (const auto* preset = atem::find_preset(target)) {
    spec = preset->job;
  } else {
    throw atem::SchemaError("'" + target + "' is neither a readable spec file nor a preset name");
  }

  const auto overrides = flags.overrides();
  const atem::JobResult result = atem::execute_job(spec, overrides);
  if (result.seed_warning) std::cerr << "warning: " << *result.seed_warning << "\n";

  const std::filesystem::path dir = result.spec.output_dir;
  for (const auto& path : atem::write_artifacts(result, dir, flags.digits)) std::cout << "wrote " << path.string() << "\n";

  std::cout << atem::spectrum_csv(result.spectrum, std::min(flags.digits, 21));
  int status = 0;
  if (!result.all_converged()) {
    for (const auto& r : result.spectrum) {
      if (!r.converged) {
        std::cerr << "error: state " << r.state << " reached " << r.stable_digits << " stable digits, target "
                  << result.spec.scan.target_digits << "\n";
      }
    }
    status = kExitNumeric;
  }
  if (!result.table_check_passed()) {
    std::cerr << "error: table check failed\n" << atem::table_check_csv(result.table_check);
    status = kExitNumeric;
  }
  return status;
}

int reproduce_command(const std::string& table_name, const GlobalFlags& flags) {
  const auto id = atem::table_id_from_string(table_name);
  if (!id) throw atem::SchemaError("unknown table '" + table_name + "'; expected t1, t2 or t3");
  auto overrides = flags.overrides();
  const auto dir = overrides.output_dir;
  // Per-job output directories are not used here; only the report is written.
  overrides.output_dir.reset();
  const atem::TableReport report = atem::reproduce_table(*id, overrides);
  std::cout << atem::format_table_report(report);
  if (dir) {
    std::filesystem::create_directories(*dir);
    const auto path = *dir / ("table_" + std::string(atem::to_string(*id)) + ".csv");
    std::ofstream(path, std::ios::binary) << atem::table_check_csv(report.rows);
    std::cout << "wrote " << path.string() << "\n";
  }
  return report.passed() ? 0 : kExitNumeric;
}

int presets_list() {
  for (const auto& preset : atem::presets()) std::cout << preset.name << "\t" << preset.description << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state spectra of 1-D Schroedinger operators with polynomial potentials"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--precision-bits", flags.precision_bits, "MPFR mantissa bits (>= 64); overrides ATEM_PRECISION_BITS")
      ->check(CLI::Range(atem::kMinPrecisionBits, 1 << 20));
  app.add_option("--m", flags.m, "Largest m in the schedule")->check(CLI::Range(2, 100000));
  app.add_option("--output-dir", flags.output_dir, "Directory for CSV/JSON artifacts");
  app.add_option("--digits", flags.digits, "Significant digits in CSV output")->check(CLI::Range(1, 10000));

  std::string target;
  auto* run = app.add_subcommand("run", "Run a job spec file or a preset by name");
  run->add_option("spec", target, "Path to spec.json or a preset name")->required();

  std::string table;
  auto* reproduce = app.add_subcommand("reproduce-table", "Recompute a reference table and compare");
  reproduce->add_option("table", table, "t1, t2 or t3")->required();

  auto* presets = app.add_subcommand("presets", "Built-in jobs");
  auto* list = presets->add_subcommand("list", "List preset names");
  presets->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(target, flags);
    if (reproduce->parsed()) return reproduce_command(table, flags);
    if (list->parsed()) return presets_list();
  } catch (const atem::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const atem::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

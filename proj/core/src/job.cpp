#include "atem/job.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "atem/presets.hpp"

namespace atem {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- parsing

std::string_view to_string(Artifact artifact) {
  switch (artifact) {
    case Artifact::spectrum:
      return "spectrum";
    case Artifact::wavefunctions:
      return "wavefunctions";
    case Artifact::plotdata:
      return "plotdata";
    case Artifact::table_check:
      return "table-check";
  }
  return "unknown";
}

std::optional<Artifact> artifact_from_string(std::string_view name) {
  if (name == "spectrum") return Artifact::spectrum;
  if (name == "wavefunctions") return Artifact::wavefunctions;
  if (name == "plotdata") return Artifact::plotdata;
  if (name == "table-check") return Artifact::table_check;
  return std::nullopt;
}

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  throw SchemaError(path + ": " + message);
}

// Rejects any key outside `allowed`.
void check_keys(const json& object, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) schema_fail(path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) schema_fail(path, "unknown field '" + key + "'");
  }
}

std::string child(const std::string& path, std::string_view key) { return path + "." + std::string(key); }

// Decimal literal kept verbatim; validated by parsing it.
std::string get_decimal(const json& value, const std::string& path) {
  if (!value.is_string()) schema_fail(path, "expected a decimal string (numbers as JSON strings)");
  auto text = value.get<std::string>();
  try {
    (void)Real::from_string(text, kMinPrecisionBits);
  } catch (const Error& e) {
    schema_fail(path, "'" + text + "' is not a finite decimal number");
  }
  return text;
}

std::vector<std::string> get_decimal_list(const json& value, const std::string& path) {
  if (!value.is_array()) schema_fail(path, "expected an array of decimal strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(get_decimal(value[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

long get_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) schema_fail(path, "expected an integer");
  return value.get<long>();
}

int get_int(const json& value, const std::string& path) {
  const long v = get_integer(value, path);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) schema_fail(path, "out of range");
  return static_cast<int>(v);
}

std::string get_string(const json& value, const std::string& path) {
  if (!value.is_string()) schema_fail(path, "expected a string");
  return value.get<std::string>();
}

std::vector<int> get_int_list(const json& value, const std::string& path) {
  if (!value.is_array()) schema_fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(get_int(value[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

ProblemDescription parse_problem(const json& j, const std::string& path) {
  check_keys(j, path, {"potential", "alpha", "beta", "s_coeffs", "energy_scale"});
  ProblemDescription p;
  if (!j.contains("potential")) schema_fail(path, "missing required field 'potential'");
  p.potential = get_decimal_list(j["potential"], child(path, "potential"));
  if (j.contains("alpha")) p.alpha = get_decimal(j["alpha"], child(path, "alpha"));
  if (j.contains("beta")) p.beta = get_decimal(j["beta"], child(path, "beta"));
  if (j.contains("s_coeffs")) p.s_coeffs = get_decimal_list(j["s_coeffs"], child(path, "s_coeffs"));
  if (j.contains("energy_scale")) p.energy_scale = get_integer(j["energy_scale"], child(path, "energy_scale"));
  return p;
}

ScanDescription parse_scan(const json& j, const std::string& path) {
  check_keys(j, path,
             {"e_min", "e_max", "grid_points", "m_schedule", "m_convention", "target_digits", "channel",
              "bisection_tol", "match_relative", "match_absolute", "max_grid_refinements", "threads"});
  ScanDescription s;
  if (!j.contains("e_max")) schema_fail(path, "missing required field 'e_max'");
  s.e_max = get_decimal(j["e_max"], child(path, "e_max"));
  if (j.contains("e_min")) s.e_min = get_decimal(j["e_min"], child(path, "e_min"));
  if (j.contains("grid_points")) s.grid_points = get_int(j["grid_points"], child(path, "grid_points"));
  if (j.contains("m_schedule")) s.m_schedule = get_int_list(j["m_schedule"], child(path, "m_schedule"));
  if (j.contains("m_convention")) {
    const auto name = get_string(j["m_convention"], child(path, "m_convention"));
    const auto conv = m_convention_from_string(name);
    if (!conv) schema_fail(child(path, "m_convention"), "expected 'taylor-order' or 'recurrence-depth'");
    s.m_convention = *conv;
  }
  if (j.contains("target_digits")) s.target_digits = get_int(j["target_digits"], child(path, "target_digits"));
  if (j.contains("channel")) {
    const auto name = get_string(j["channel"], child(path, "channel"));
    if (name != "auto") {
      const auto channel = channel_from_string(name);
      if (!channel) schema_fail(child(path, "channel"), "expected 'auto', 'determinant', 'parity-even' or 'parity-odd'");
      s.channel = *channel;
    }
  }
  if (j.contains("bisection_tol")) s.bisection_tol = get_decimal(j["bisection_tol"], child(path, "bisection_tol"));
  if (j.contains("match_relative")) s.match_relative = get_decimal(j["match_relative"], child(path, "match_relative"));
  if (j.contains("match_absolute")) s.match_absolute = get_decimal(j["match_absolute"], child(path, "match_absolute"));
  if (j.contains("max_grid_refinements")) {
    s.max_grid_refinements = get_int(j["max_grid_refinements"], child(path, "max_grid_refinements"));
  }
  if (j.contains("threads")) s.threads = get_int(j["threads"], child(path, "threads"));
  return s;
}

WavefunctionDescription parse_wavefunctions(const json& j, const std::string& path) {
  check_keys(j, path, {"states", "truncation_order", "x_min", "x_max", "points", "quad_tol"});
  WavefunctionDescription w;
  if (j.contains("states")) w.states = get_int_list(j["states"], child(path, "states"));
  if (j.contains("truncation_order")) w.truncation_order = get_int(j["truncation_order"], child(path, "truncation_order"));
  if (j.contains("x_min")) w.x_min = get_decimal(j["x_min"], child(path, "x_min"));
  if (j.contains("x_max")) w.x_max = get_decimal(j["x_max"], child(path, "x_max"));
  if (j.contains("points")) w.points = get_int(j["points"], child(path, "points"));
  if (j.contains("quad_tol")) w.quad_tol = get_decimal(j["quad_tol"], child(path, "quad_tol"));
  return w;
}

ReferenceSelection parse_reference(const json& j, const std::string& path) {
  check_keys(j, path, {"table", "group"});
  ReferenceSelection r;
  if (!j.contains("table")) schema_fail(path, "missing required field 'table'");
  const auto id = table_id_from_string(get_string(j["table"], child(path, "table")));
  if (!id) schema_fail(child(path, "table"), "expected 't1', 't2' or 't3'");
  r.table = *id;
  if (j.contains("group")) r.group = get_string(j["group"], child(path, "group"));
  return r;
}

// Semantic checks that need numbers: builds the problem and the scan once.
void validate_semantics(const JobSpec& spec) {
  const int bits = spec.precision_bits.value_or(kDefaultPrecisionBits);
  try {
    (void)checked_precision(bits);
    const ProblemSpec problem = spec.problem.build(bits);
    const ScanConfig config = spec.scan.build(problem, bits);
    config.validate(bits);
    const auto& w = spec.wavefunctions;
    if (w.truncation_order < 1) throw InvalidArgument("wavefunctions.truncation_order must be >= 1");
    if (w.points < 2) throw InvalidArgument("wavefunctions.points must be >= 2");
    if (!(Real::from_string(w.x_min, bits) < Real::from_string(w.x_max, bits))) {
      throw InvalidArgument("wavefunctions.x_min must be < x_max");
    }
    if (Real::from_string(w.quad_tol, bits).sign() <= 0) throw InvalidArgument("wavefunctions.quad_tol must be > 0");
    for (int state : w.states) {
      if (state < 0) throw InvalidArgument("wavefunctions.states entries must be >= 0");
    }
    const bool wants_table = std::find(spec.outputs.begin(), spec.outputs.end(), Artifact::table_check) != spec.outputs.end();
    if (wants_table && !spec.reference) throw InvalidArgument("outputs contains 'table-check' but 'reference' is absent");
    if (spec.reference) {
      const auto groups = reference_table(spec.reference->table).groups();
      if (std::find(groups.begin(), groups.end(), spec.reference->group) == groups.end()) {
        throw InvalidArgument("reference.group '" + spec.reference->group + "' does not exist in table " +
                              std::string(to_string(spec.reference->table)));
      }
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("job spec: ") + e.what());
  }
}

json to_json(const ProblemDescription& p) {
  json j;
  j["potential"] = p.potential;
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.beta) j["beta"] = *p.beta;
  if (p.s_coeffs) j["s_coeffs"] = *p.s_coeffs;
  j["energy_scale"] = p.energy_scale;
  return j;
}

json to_json(const ScanDescription& s) {
  json j;
  if (s.e_min) j["e_min"] = *s.e_min;
  j["e_max"] = s.e_max;
  j["grid_points"] = s.grid_points;
  j["m_schedule"] = s.m_schedule;
  j["m_convention"] = std::string(to_string(s.m_convention));
  j["target_digits"] = s.target_digits;
  j["channel"] = s.channel ? std::string(to_string(*s.channel)) : std::string("auto");
  if (s.bisection_tol) j["bisection_tol"] = *s.bisection_tol;
  j["match_relative"] = s.match_relative;
  j["match_absolute"] = s.match_absolute;
  j["max_grid_refinements"] = s.max_grid_refinements;
  j["threads"] = s.threads;
  return j;
}

json to_json(const WavefunctionDescription& w) {
  json j;
  j["states"] = w.states;
  j["truncation_order"] = w.truncation_order;
  j["x_min"] = w.x_min;
  j["x_max"] = w.x_max;
  j["points"] = w.points;
  j["quad_tol"] = w.quad_tol;
  return j;
}

json to_json(const JobSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["problem"] = to_json(spec.problem);
  j["scan"] = to_json(spec.scan);
  j["wavefunctions"] = to_json(spec.wavefunctions);
  json outputs = json::array();
  for (auto a : spec.outputs) outputs.push_back(std::string(to_string(a)));
  j["outputs"] = outputs;
  if (spec.precision_bits) j["precision_bits"] = *spec.precision_bits;
  j["output_dir"] = spec.output_dir;
  if (spec.reference) {
    j["reference"] = json{{"table", std::string(to_string(spec.reference->table))}, {"group", spec.reference->group}};
  }
  return j;
}

// ---------------------------------------------------------------- output

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool wants(const JobSpec& spec, Artifact artifact) {
  return std::find(spec.outputs.begin(), spec.outputs.end(), artifact) != spec.outputs.end();
}

SeriesParity series_parity(StateParity parity) {
  switch (parity) {
    case StateParity::even:
      return SeriesParity::even;
    case StateParity::odd:
      return SeriesParity::odd;
    case StateParity::unknown:
      return SeriesParity::generic;
  }
  return SeriesParity::generic;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

// ---------------------------------------------------------------- spec types

ProblemSpec ProblemDescription::build(int precision_bits) const {
  const auto to_poly = [&](const std::vector<std::string>& coeffs) {
    std::vector<Real> values;
    values.reserve(coeffs.size());
    for (const auto& c : coeffs) values.push_back(Real::from_string(c, precision_bits));
    return Poly(std::move(values), precision_bits);
  };
  const bool has_ab = alpha.has_value() || beta.has_value();
  if (has_ab && s_coeffs) throw SchemaError("problem: give either alpha/beta or s_coeffs, not both");
  if (!has_ab && !s_coeffs) throw SchemaError("problem: one of alpha/beta or s_coeffs is required");
  const AnsatzExponent ansatz =
      s_coeffs ? AnsatzExponent(to_poly(*s_coeffs))
               : AnsatzExponent::gaussian_quartic(Real::from_string(alpha.value_or("0"), precision_bits),
                                                  Real::from_string(beta.value_or("0"), precision_bits));
  return ProblemSpec::make(to_poly(potential), ansatz, energy_scale);
}

ScanConfig ScanDescription::build(const ProblemSpec& problem, int precision_bits) const {
  ScanConfig c;
  c.e_min = e_min ? Real::from_string(*e_min, precision_bits) : potential_minimum(problem);
  c.e_max = Real::from_string(e_max, precision_bits);
  c.grid_points = grid_points;
  c.m_schedule = m_schedule;
  c.m_convention = m_convention;
  c.target_digits = target_digits;
  c.channel = channel;
  if (bisection_tol) c.bisection_tol = Real::from_string(*bisection_tol, precision_bits);
  c.match_relative = Real::from_string(match_relative, precision_bits);
  c.match_absolute = Real::from_string(match_absolute, precision_bits);
  c.max_grid_refinements = max_grid_refinements;
  c.threads = threads;
  return c;
}

JobSpec parse_job_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("job spec is not valid JSON: ") + e.what());
  }
  const std::string root = "$";
  check_keys(j, root,
             {"name", "problem", "scan", "wavefunctions", "outputs", "precision_bits", "output_dir", "reference"});
  JobSpec spec;
  if (j.contains("name")) spec.name = get_string(j["name"], child(root, "name"));
  if (!j.contains("problem")) schema_fail(root, "missing required field 'problem'");
  spec.problem = parse_problem(j["problem"], child(root, "problem"));
  if (!j.contains("scan")) schema_fail(root, "missing required field 'scan'");
  spec.scan = parse_scan(j["scan"], child(root, "scan"));
  if (j.contains("wavefunctions")) spec.wavefunctions = parse_wavefunctions(j["wavefunctions"], child(root, "wavefunctions"));
  if (j.contains("outputs")) {
    const auto& outs = j["outputs"];
    const auto path = child(root, "outputs");
    if (!outs.is_array()) schema_fail(path, "expected an array");
    spec.outputs.clear();
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const auto name = get_string(outs[i], path + "[" + std::to_string(i) + "]");
      const auto artifact = artifact_from_string(name);
      if (!artifact) schema_fail(path, "unknown artifact '" + name + "'");
      if (std::find(spec.outputs.begin(), spec.outputs.end(), *artifact) == spec.outputs.end()) spec.outputs.push_back(*artifact);
    }
  }
  if (j.contains("precision_bits")) spec.precision_bits = get_int(j["precision_bits"], child(root, "precision_bits"));
  if (j.contains("output_dir")) spec.output_dir = get_string(j["output_dir"], child(root, "output_dir"));
  if (j.contains("reference")) spec.reference = parse_reference(j["reference"], child(root, "reference"));
  validate_semantics(spec);
  return spec;
}

JobSpec load_job_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read job spec " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_job_spec(buffer.str());
}

std::string serialize_job_spec(const JobSpec& spec) { return to_json(spec).dump(2) + "\n"; }

int resolve_precision(const JobSpec& spec, const RunOverrides& overrides) {
  if (overrides.precision_bits) return checked_precision(*overrides.precision_bits);
  if (spec.precision_bits) return checked_precision(*spec.precision_bits);
  if (const char* env = std::getenv("ATEM_PRECISION_BITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value <= 0 || value > std::numeric_limits<int>::max()) {
      throw InvalidArgument(std::string("ATEM_PRECISION_BITS must be a positive integer, got '") + env + "'");
    }
    return checked_precision(static_cast<int>(value));
  }
  return kDefaultPrecisionBits;
}

// ---------------------------------------------------------------- execution

bool JobResult::table_check_passed() const {
  return std::all_of(table_check.begin(), table_check.end(), [](const TableComparison& c) { return c.pass; });
}

bool JobResult::all_converged() const {
  return std::all_of(spectrum.begin(), spectrum.end(), [](const EigenvalueRecord& r) { return r.converged; });
}

bool TableReport::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const TableComparison& c) { return c.pass; });
}

JobResult execute_job(const JobSpec& spec_in, const RunOverrides& overrides) {
  JobSpec spec = spec_in;
  if (overrides.m) {
    auto& schedule = spec.scan.m_schedule;
    std::erase_if(schedule, [&](int m) { return m >= *overrides.m; });
    schedule.push_back(*overrides.m);
  }
  if (overrides.output_dir) spec.output_dir = overrides.output_dir->string();

  JobResult result;
  result.precision_bits = resolve_precision(spec, overrides);
  spec.precision_bits = result.precision_bits;
  validate_semantics(spec);
  result.spec = spec;
  const int bits = result.precision_bits;

  const ProblemSpec problem = spec.problem.build(bits);
  const ScanConfig config = spec.scan.build(problem, bits);
  const SeedPair seed = derive_seed(problem);
  result.seed_warning = seed.warning;

  auto start = std::chrono::steady_clock::now();
  result.spectrum = converge_spectrum(problem, config);
  for (const auto& record : result.spectrum) {
    const int depth = recurrence_depth(record.m_used, config.m_convention);
    result.renorm_counts.push_back(run_recurrence(seed, record.energy, depth).renorm_log.size());
  }
  result.spectrum_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  if (wants(spec, Artifact::wavefunctions) || wants(spec, Artifact::plotdata)) {
    const auto& w = spec.wavefunctions;
    const Real x_min = Real::from_string(w.x_min, bits);
    const Real x_max = Real::from_string(w.x_max, bits);
    const Real quad_tol = Real::from_string(w.quad_tol, bits);
    for (int state : w.states) {
      if (state >= static_cast<int>(result.spectrum.size())) {
        throw NumericError("wavefunctions: state " + std::to_string(state) + " requested but only " +
                           std::to_string(result.spectrum.size()) + " states were found in the scan range");
      }
      const auto& record = result.spectrum[static_cast<std::size_t>(state)];
      const int depth = recurrence_depth(record.m_used, config.m_convention);
      auto series = normalize(build_series(problem, record.energy, depth, w.truncation_order, series_parity(record.parity)),
                              quad_tol);
      auto samples = sample(series, x_min, x_max, w.points);
      result.wavefunctions.push_back({state, std::move(series), std::move(samples)});
    }
  }
  result.wavefunction_seconds = seconds_since(start);

  if (wants(spec, Artifact::table_check)) {
    result.table_check = compare_with_table(result.spectrum, *spec.reference, overrides.csv_digits);
  }
  return result;
}

std::vector<TableComparison> compare_with_table(const std::vector<EigenvalueRecord>& spectrum,
                                                const ReferenceSelection& selection, int csv_digits) {
  const auto& table = reference_table(selection.table);
  std::vector<TableComparison> rows;
  for (const auto& entry : table.column(table.validated_column, selection.group)) {
    TableComparison row;
    row.group = entry.group;
    row.state = entry.state;
    row.reference = entry.value;
    row.column = entry.column;
    const Real reference = Real::from_string(entry.value);
    // An exactly-zero reference is checked in absolute digits (|E| < 1e-10).
    row.required_digits = reference.is_zero() ? 10 : required_digits(selection.table, entry.group);
    if (entry.state < static_cast<int>(spectrum.size())) {
      const auto& energy = spectrum[static_cast<std::size_t>(entry.state)].energy;
      row.computed = energy.to_string(csv_digits);
      row.matching_digits = matching_digits(energy, entry.value);
      row.pass = row.matching_digits >= row.required_digits;
    } else {
      row.computed = "missing";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string spectrum_csv(const std::vector<EigenvalueRecord>& spectrum, int digits) {
  std::string out = "index,parity,energy,stable_digits,m_used,bracket_lo,bracket_hi\n";
  for (const auto& r : spectrum) {
    out += std::to_string(r.state) + "," + std::string(to_string(r.parity)) + "," + r.energy.to_string(digits) + "," +
           std::to_string(r.stable_digits) + "," + std::to_string(r.m_used) + "," + r.bracket.lo.to_string(digits) +
           "," + r.bracket.hi.to_string(digits) + "\n";
  }
  return out;
}

std::string samples_csv(const std::vector<SamplePoint>& samples, int digits) {
  std::string out = "x,psi\n";
  for (const auto& p : samples) out += p.x.to_string(digits) + "," + p.psi.to_string(digits) + "\n";
  return out;
}

std::string table_check_csv(const std::vector<TableComparison>& rows) {
  std::string out = "group,state,computed,reference,column,matching_digits,required_digits,pass\n";
  for (const auto& r : rows) {
    out += csv_escape(r.group) + "," + std::to_string(r.state) + "," + r.computed + "," + r.reference + "," +
           csv_escape(r.column) + "," + std::to_string(r.matching_digits) + "," + std::to_string(r.required_digits) +
           "," + (r.pass ? "pass" : "fail") + "\n";
  }
  return out;
}

int count_nodes(const std::vector<SamplePoint>& samples) {
  int previous = 0;
  int changes = 0;
  for (const auto& p : samples) {
    const int s = p.psi.sign();
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

std::string job_report_json(const JobResult& result, int digits) {
  json j;
  j["name"] = result.spec.name;
  j["spec"] = to_json(result.spec);
  j["precision_bits"] = result.precision_bits;
  j["m_convention"] = std::string(to_string(result.spec.scan.m_convention));
  j["seed_warning"] = result.seed_warning ? json(*result.seed_warning) : json(nullptr);

  json spectrum = json::array();
  std::size_t total_renorm = 0;
  for (std::size_t i = 0; i < result.spectrum.size(); ++i) {
    const auto& r = result.spectrum[i];
    const std::size_t renorm = i < result.renorm_counts.size() ? result.renorm_counts[i] : 0;
    total_renorm += renorm;
    json history = json::array();
    for (const auto& step : r.history) {
      history.push_back({{"m", step.m}, {"energy", step.energy.to_string(digits)}, {"stable_digits", step.stable_digits}});
    }
    spectrum.push_back({{"index", r.state},
                        {"channel_index", r.index},
                        {"parity", std::string(to_string(r.parity))},
                        {"channel", std::string(to_string(r.channel))},
                        {"energy", r.energy.to_string(digits)},
                        {"stable_digits", r.stable_digits},
                        {"converged", r.converged},
                        {"m_used", r.m_used},
                        {"bracket_lo", r.bracket.lo.to_string(digits)},
                        {"bracket_hi", r.bracket.hi.to_string(digits)},
                        {"renormalizations", renorm},
                        {"history", history}});
  }
  j["spectrum"] = spectrum;
  j["renormalizations_total"] = total_renorm;

  json wavefunctions = json::array();
  for (const auto& w : result.wavefunctions) {
    json coeffs = json::array();
    for (const auto& c : w.series.f_coeffs) coeffs.push_back(c.to_string(digits));
    wavefunctions.push_back({{"state", w.state},
                             {"truncation_order", w.series.truncation_order},
                             {"norm_constant", w.series.norm_constant.to_string(digits)},
                             {"nodes_in_window", count_nodes(w.samples)},
                             {"f_coeffs", coeffs}});
  }
  j["wavefunctions"] = wavefunctions;

  if (!result.table_check.empty()) {
    json rows = json::array();
    for (const auto& r : result.table_check) {
      rows.push_back({{"group", r.group},
                      {"state", r.state},
                      {"computed", r.computed},
                      {"reference", r.reference},
                      {"column", r.column},
                      {"matching_digits", r.matching_digits},
                      {"required_digits", r.required_digits},
                      {"pass", r.pass}});
    }
    j["table_check"] = rows;
  }
  j["timings"] = {{"spectrum_seconds", result.spectrum_seconds}, {"wavefunction_seconds", result.wavefunction_seconds}};
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_artifacts(const JobResult& result, const std::filesystem::path& dir,
                                                   int csv_digits) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_file(path, content);
    written.push_back(path);
  };
  const auto& spec = result.spec;
  if (wants(spec, Artifact::spectrum)) emit("spectrum.csv", spectrum_csv(result.spectrum, csv_digits));
  if (wants(spec, Artifact::wavefunctions)) {
    for (const auto& w : result.wavefunctions) {
      emit("wavefunction_" + std::to_string(w.state) + ".csv", samples_csv(w.samples, csv_digits));
    }
  }
  if (wants(spec, Artifact::plotdata) && !result.wavefunctions.empty()) {
    // One table with a psi column per state, sharing the x grid.
    std::string out = "x";
    for (const auto& w : result.wavefunctions) out += ",psi_" + std::to_string(w.state);
    out += "\n";
    const auto& grid = result.wavefunctions.front().samples;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += grid[i].x.to_string(csv_digits);
      for (const auto& w : result.wavefunctions) out += "," + w.samples[i].psi.to_string(csv_digits);
      out += "\n";
    }
    emit("plotdata.csv", out);
  }
  if (wants(spec, Artifact::table_check)) emit("table_check.csv", table_check_csv(result.table_check));
  emit("job_report.json", job_report_json(result, csv_digits));
  return written;
}

// ---------------------------------------------------------------- tables

TableReport reproduce_table(TableId table, const RunOverrides& overrides) {
  TableReport report;
  report.table = table;
  report.notes = reference_table(table).notes;
  for (JobSpec job : table_jobs(table)) {
    // Tables need only the spectrum; the comparison happens here.
    job.outputs = {Artifact::spectrum};
    const JobResult result = execute_job(job, overrides);
    auto rows = compare_with_table(result.spectrum, *job.reference, overrides.csv_digits);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

std::string format_table_report(const TableReport& report) {
  std::ostringstream out;
  out << "table " << to_string(report.table) << ": " << reference_table(report.table).title << "\n";
  for (const auto& r : report.rows) {
    out << "  " << (r.group.empty() ? std::string("-") : r.group) << "  n=" << r.state << "  computed=" << r.computed
        << "  reference=" << r.reference << " (" << r.column << ")  digits=" << r.matching_digits << "/"
        << r.required_digits << "  " << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& note : report.notes) out << "  note: " << note << "\n";
  out << (report.passed() ? "all entries within tolerance" : "one or more entries outside tolerance") << "\n";
  return out.str();
}

}  // namespace atem

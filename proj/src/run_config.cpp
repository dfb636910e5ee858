#include "diraclab/run_config.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "diraclab/conventions.hpp"
#include "diraclab/dipole_coupling.hpp"
#include "diraclab/factorization.hpp"
#include "diraclab/holonomy.hpp"
#include "diraclab/random.hpp"

namespace diraclab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config error at " + path + ": " + message);
}

void require_known_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) fail(path + "." + key, "unknown key");
  }
}

double read_double(const json& obj, const std::string& path, const char* key,
                   double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path + "." + key, "value must be finite");
  return d;
}

double require_double(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required value");
  return read_double(obj, path, key, 0.0);
}

int read_int(const json& obj, const std::string& path, const char* key,
             int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

Vec3 require_vec3(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required value");
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3)
    fail(path + "." + key, "expected an array of 3 numbers");
  Vec3 out;
  double* comps[3] = {&out.x, &out.y, &out.z};
  for (int k = 0; k < 3; ++k) {
    if (!v[k].is_number()) fail(path + "." + key, "expected an array of 3 numbers");
    *comps[k] = v[k].get<double>();
    if (!std::isfinite(*comps[k])) fail(path + "." + key, "value must be finite");
  }
  return out;
}

ExperimentKind parse_experiment(const json& doc) {
  if (!doc.contains("experiment")) fail("$.experiment", "missing required value");
  if (!doc.at("experiment").is_string()) fail("$.experiment", "expected a string");
  const std::string name = doc.at("experiment").get<std::string>();
  if (name == "phase") return ExperimentKind::Phase;
  if (name == "verify") return ExperimentKind::Verify;
  if (name == "potential") return ExperimentKind::Potential;
  if (name == "diagnose-factorization") return ExperimentKind::DiagnoseFactorization;
  if (name == "sweep") return ExperimentKind::Sweep;
  fail("$.experiment",
       "unknown experiment '" + name +
           "' (expected phase | verify | potential | diagnose-factorization | sweep)");
}

FieldSettings parse_fields(const json& doc) {
  FieldSettings f;
  if (!doc.contains("fields")) fail("$.fields", "missing required value");
  const json& obj = doc.at("fields");
  if (!obj.is_object()) fail("$.fields", "expected an object");
  require_known_keys(obj, "$.fields", {"variant", "lambda", "b0", "e", "b"});
  if (!obj.contains("variant") || !obj.at("variant").is_string())
    fail("$.fields.variant", "expected \"wei\" or \"uniform\"");
  const std::string variant = obj.at("variant").get<std::string>();
  if (variant == "wei") {
    f.wei = true;
    f.lambda = require_double(obj, "$.fields", "lambda");
    f.b0 = require_double(obj, "$.fields", "b0");
  } else if (variant == "uniform") {
    f.wei = false;
    f.e = require_vec3(obj, "$.fields", "e");
    f.b = require_vec3(obj, "$.fields", "b");
  } else {
    fail("$.fields.variant", "expected \"wei\" or \"uniform\"");
  }
  return f;
}

SweepAxis parse_axis(const json& obj) {
  if (!obj.contains("axis") || !obj.at("axis").is_string())
    fail("$.sweep.axis", "expected \"segments\" | \"radius\" | \"grid\"");
  const std::string axis = obj.at("axis").get<std::string>();
  if (axis == "segments") return SweepAxis::Segments;
  if (axis == "radius") return SweepAxis::Radius;
  if (axis == "grid") return SweepAxis::Grid;
  fail("$.sweep.axis", "expected \"segments\" | \"radius\" | \"grid\"");
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Phase: return "phase";
    case ExperimentKind::Verify: return "verify";
    case ExperimentKind::Potential: return "potential";
    case ExperimentKind::DiagnoseFactorization: return "diagnose-factorization";
    case ExperimentKind::Sweep: return "sweep";
  }
  return "unknown";
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) fail("$", "expected a JSON object");
  require_known_keys(doc, "$",
                     {"experiment", "fields", "params", "loop", "time_leg",
                      "grid", "seed", "draws", "tolerance", "sweep", "out"});

  RunConfig c;
  c.experiment = parse_experiment(doc);

  const bool needs_fields = c.experiment != ExperimentKind::Verify;
  if (needs_fields) c.fields = parse_fields(doc);

  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) fail("$.params", "expected an object");
    require_known_keys(p, "$.params", {"m", "alpha_pol", "chi", "mu"});
    c.params.mass = read_double(p, "$.params", "m", 0.0);
    c.params.alpha_pol = read_double(p, "$.params", "alpha_pol", 0.0);
    c.params.chi = read_double(p, "$.params", "chi", 0.0);
    c.params.mu = read_double(p, "$.params", "mu", 0.0);
    if (c.params.mass < 0.0) fail("$.params.m", "mass must be >= 0");
  }

  if (doc.contains("loop")) {
    const json& l = doc.at("loop");
    if (!l.is_object()) fail("$.loop", "expected an object");
    require_known_keys(l, "$.loop", {"radius", "segments", "orientation"});
    c.loop.radius = read_double(l, "$.loop", "radius", c.loop.radius);
    c.loop.segments = read_int(l, "$.loop", "segments", c.loop.segments);
    c.loop.orientation = read_int(l, "$.loop", "orientation", c.loop.orientation);
    if (!(c.loop.radius > 0.0)) fail("$.loop.radius", "must be > 0");
    if (c.loop.segments < 1) fail("$.loop.segments", "must be >= 1");
    if (c.loop.orientation != 1 && c.loop.orientation != -1)
      fail("$.loop.orientation", "must be +1 or -1");
  }

  if (doc.contains("time_leg")) {
    const json& t = doc.at("time_leg");
    if (!t.is_object()) fail("$.time_leg", "expected an object");
    require_known_keys(t, "$.time_leg", {"tau"});
    c.tau = read_double(t, "$.time_leg", "tau", 0.0);
    if (c.tau < 0.0) fail("$.time_leg.tau", "must be >= 0");
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (!g.is_object()) fail("$.grid", "expected an object");
    require_known_keys(g, "$.grid", {"r_min", "r_max", "nr", "nphi"});
    c.grid.r_min = read_double(g, "$.grid", "r_min", c.grid.r_min);
    c.grid.r_max = read_double(g, "$.grid", "r_max", c.grid.r_max);
    c.grid.nr = read_int(g, "$.grid", "nr", c.grid.nr);
    c.grid.nphi = read_int(g, "$.grid", "nphi", c.grid.nphi);
    if (!(c.grid.r_min > 0.0)) fail("$.grid.r_min", "must be > 0");
    if (!(c.grid.r_max > c.grid.r_min)) fail("$.grid.r_max", "must exceed r_min");
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer())
      fail("$.seed", "expected an unsigned integer");
    if (s.is_number_integer() && s.get<std::int64_t>() < 0)
      fail("$.seed", "expected an unsigned integer");
    c.seed = s.get<std::uint64_t>();
  }

  c.draws = read_int(doc, "$", "draws", c.draws);
  if (c.draws < 1) fail("$.draws", "must be >= 1");
  c.tolerance = read_double(doc, "$", "tolerance", c.tolerance);
  if (!(c.tolerance > 0.0)) fail("$.tolerance", "must be > 0");

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) fail("$.sweep", "expected an object");
    require_known_keys(s, "$.sweep", {"axis", "values"});
    SweepSettings settings;
    settings.axis = parse_axis(s);
    if (!s.contains("values") || !s.at("values").is_array())
      fail("$.sweep.values", "expected an array of numbers");
    for (const json& v : s.at("values")) {
      if (!v.is_number()) fail("$.sweep.values", "expected an array of numbers");
      const double d = v.get<double>();
      if (!std::isfinite(d)) fail("$.sweep.values", "values must be finite");
      settings.values.push_back(d);
    }
    c.sweep = std::move(settings);
  }

  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) fail("$.out", "expected a string");
    c.out_dir = doc.at("out").get<std::string>();
  }

  // Per-experiment requirements.
  const bool randomized = c.experiment == ExperimentKind::Verify ||
                          c.experiment == ExperimentKind::DiagnoseFactorization;
  if (randomized && !c.seed)
    fail("$.seed", "a seed is mandatory for randomized suites");
  const bool needs_wei = c.experiment == ExperimentKind::Potential ||
                         c.experiment == ExperimentKind::DiagnoseFactorization ||
                         c.experiment == ExperimentKind::Sweep;
  if (needs_wei && !c.fields.wei)
    fail("$.fields.variant", "this experiment requires the wei variant");
  if (c.experiment == ExperimentKind::Sweep) {
    if (!c.sweep) fail("$.sweep", "missing required value");
    if (c.sweep->values.size() < 3) fail("$.sweep.values", "need at least 3 points");
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json echo_config(const RunConfig& c) {
  json doc;
  doc["experiment"] = std::string(to_string(c.experiment));
  if (c.experiment != ExperimentKind::Verify) {
    if (c.fields.wei)
      doc["fields"] = {{"variant", "wei"}, {"lambda", c.fields.lambda}, {"b0", c.fields.b0}};
    else
      doc["fields"] = {{"variant", "uniform"},
                       {"e", {c.fields.e.x, c.fields.e.y, c.fields.e.z}},
                       {"b", {c.fields.b.x, c.fields.b.y, c.fields.b.z}}};
  }
  doc["params"] = {{"m", c.params.mass},
                   {"alpha_pol", c.params.alpha_pol},
                   {"chi", c.params.chi},
                   {"mu", c.params.mu}};
  doc["loop"] = {{"radius", c.loop.radius},
                 {"segments", c.loop.segments},
                 {"orientation", c.loop.orientation}};
  doc["time_leg"] = {{"tau", c.tau}};
  doc["grid"] = {{"r_min", c.grid.r_min},
                 {"r_max", c.grid.r_max},
                 {"nr", c.grid.nr},
                 {"nphi", c.grid.nphi}};
  if (c.seed) doc["seed"] = *c.seed;
  doc["draws"] = c.draws;
  doc["tolerance"] = c.tolerance;
  if (c.sweep) {
    const char* axis = c.sweep->axis == SweepAxis::Segments ? "segments"
                       : c.sweep->axis == SweepAxis::Radius ? "radius"
                                                            : "grid";
    doc["sweep"] = {{"axis", axis}, {"values", c.sweep->values}};
  }
  doc["out"] = c.out_dir;
  return doc;
}

std::string format_double(double value) {
  value += 0.0;  // fold -0 into 0
  std::array<char, 40> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

namespace {

json coefficient_json(const CommutingDecomposition& d) {
  auto c = [](Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
  return {{"c_identity", c(d.c_identity)},
          {"c_beta", c(d.c_beta)},
          {"c_sigma3", c(d.c_sigma3)},
          {"c_beta_sigma3", c(d.c_beta_sigma3)},
          {"remainder_norm", d.remainder_norm}};
}

json record_skeleton(const RunConfig& config) {
  json record;
  record["config"] = echo_config(config);
  record["conventions_hash"] = "fnv1a64:" + conventions_hash_hex();
  record["experiment"] = std::string(to_string(config.experiment));
  record["tool_version"] = std::string(kToolVersion);
  record["tolerances"] = {{"gate", config.tolerance}};
  return record;
}

RunArtifacts run_phase(const RunConfig& config) {
  const GammaBasis basis = build_gamma_basis();
  const FieldConfiguration fc = config.fields.build();
  const LoopPath path{config.loop.radius, 0.0, config.loop.orientation,
                      config.loop.segments, {}};
  const TimeLeg leg{config.tau};

  const PhaseResult numeric = compute_phase(fc, config.params, path, leg, basis);

  json outputs;
  outputs["coefficients"] = coefficient_json(numeric.coefficients);
  outputs["eigenphases"] = numeric.eigenphases;
  outputs["ordering_discrepancy"] = numeric.ordering_discrepancy;
  outputs["commutator_certificate"] = numeric.commutator_certificate;
  outputs["unitarity_defect"] = numeric.unitarity_defect;
  outputs["notes"] = json::array(
      {"time-leg term carries beta (read off the beta*Sigma3 coefficient); "
       "see the convention ledger"});

  if (config.fields.wei) {
    const PhaseResult analytic = analytic_phase(fc, config.params, leg, basis);
    outputs["analytic_coefficients"] = coefficient_json(analytic.coefficients);
    outputs["deviation_from_analytic"] =
        max_abs_distance(numeric.phi, analytic.phi);
  }

  RunArtifacts artifacts;
  artifacts.result = record_skeleton(config);
  artifacts.result["outputs"] = outputs;
  return artifacts;
}

RunArtifacts run_verify(const RunConfig& config) {
  const GammaBasis basis = build_gamma_basis();
  DeterministicRng rng(*config.seed);

  double max_reduction = 0.0;
  double max_dipole = 0.0;
  for (int k = 0; k < config.draws; ++k) {
    const Vec3 e = rng.uniform_vec3(-1.0, 1.0);
    const Vec3 b = rng.uniform_vec3(-1.0, 1.0);
    DipoleParams p;
    p.alpha_pol = rng.uniform(-1.0, 1.0);
    p.chi = rng.uniform(-1.0, 1.0);
    p.mu = rng.uniform(-1.0, 1.0);
    max_reduction = std::max(max_reduction, verify_reduction(e, b, p, basis));
    max_dipole = std::max(max_dipole, verify_dipole_reduction(e, b, p.mu, basis));
  }

  const bool pass =
      max_reduction < config.tolerance && max_dipole < config.tolerance;

  RunArtifacts artifacts;
  artifacts.result = record_skeleton(config);
  artifacts.result["outputs"] = {{"draws", config.draws},
                                 {"max_reduction_deviation", max_reduction},
                                 {"max_dipole_deviation", max_dipole},
                                 {"pass", pass}};
  artifacts.exit_code = pass ? 0 : 2;
  return artifacts;
}

RunArtifacts run_potential(const RunConfig& config) {
  const FieldConfiguration fc = config.fields.build();
  const int n = config.grid.nr;
  const double dr = n > 1 ? (config.grid.r_max - config.grid.r_min) / (n - 1) : 0.0;

  std::string csv = "r,v_inverse_square,v_magnetic_constant,v_total\n";
  const double v_b = magnetic_local_term(config.params, fc);
  double first = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = config.grid.r_min + i * dr;
    const double v = effective_inverse_square(config.params, fc, r);
    if (i == 0) first = v;
    csv += format_double(r) + "," + format_double(v) + "," + format_double(v_b) +
           "," + format_double(v + v_b) + "\n";
  }

  RunArtifacts artifacts;
  artifacts.result = record_skeleton(config);
  artifacts.result["outputs"] = {{"rows", n},
                                 {"v_at_r_min", first},
                                 {"v_magnetic_constant", v_b}};
  artifacts.table = std::move(csv);
  return artifacts;
}

ManufacturedSpinor random_mode(DeterministicRng& rng) {
  Spinor direction;
  for (int k = 0; k < 4; ++k)
    direction.c[k] = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  direction.c[0] += 0.5;  // keep the mode away from zero
  return fourier_mode(rng.uniform(0.5, 1.5), rng.uniform(0.2, 0.9),
                      rng.uniform(1.0, 3.0), rng.uniform(0.0, 6.0),
                      static_cast<int>(rng.uniform_int(-4, 4)), direction);
}

// Fixed mode for convergence sweeps; smooth, all stencils exercised.
ManufacturedSpinor canonical_mode() {
  Spinor direction;
  direction.c = {Complex{0.8, 0.0}, Complex{0.2, 0.1}, Complex{-0.4, 0.0},
                 Complex{0.0, 0.3}};
  return fourier_mode(1.1, 0.6, 2.0, 0.3, 3, direction);
}

double operator_error(const ManufacturedSpinor& mode, const PolarGrid& grid,
                      const FieldConfiguration& fc, const DipoleParams& params,
                      const GammaBasis& basis, bool reduced) {
  const SpinorField sampled = sample(mode, grid);
  const SpinorField discrete =
      reduced ? apply_reduced_operator(sampled, fc, params, basis)
              : apply_full_operator(sampled, fc, params, basis);
  const SpinorField analytic =
      reduced ? apply_reduced_operator_analytic(mode, grid, fc, params, basis)
              : apply_full_operator_analytic(mode, grid, fc, params, basis);
  return max_abs_distance(discrete, analytic);
}

RunArtifacts run_diagnose(const RunConfig& config) {
  const GammaBasis basis = build_gamma_basis();
  const FieldConfiguration fc = config.fields.build();
  const PolarGrid grid(config.grid.r_min, config.grid.r_max, config.grid.nr,
                       config.grid.nphi);
  DeterministicRng rng(*config.seed);

  double worst_cancellation = 0.0;
  constexpr int kFields = 10;
  for (int k = 0; k < kFields; ++k) {
    const ManufacturedSpinor mode = random_mode(rng);
    worst_cancellation =
        std::max(worst_cancellation, azimuthal_cancellation_residual(
                                         mode, fc, config.params, basis, grid));
  }

  const FactorizationReport report = full_factorization_residual(
      random_mode(rng), fc, config.params, basis, grid);

  // Refinement sweep of both discrete operators on the canonical mode.
  std::string csv = "h,error_full,error_reduced\n";
  std::vector<std::array<double, 2>> full_pts, reduced_pts;
  for (int level = 0; level < 4; ++level) {
    const int m = 1 << level;
    const PolarGrid fine(config.grid.r_min, config.grid.r_max,
                         (config.grid.nr - 1) * m + 1, config.grid.nphi * m);
    const double err_full = operator_error(canonical_mode(), fine, fc,
                                           config.params, basis, false);
    const double err_reduced = operator_error(canonical_mode(), fine, fc,
                                              config.params, basis, true);
    full_pts.push_back({fine.dr(), err_full});
    reduced_pts.push_back({fine.dr(), err_reduced});
    csv += format_double(fine.dr()) + "," + format_double(err_full) + "," +
           format_double(err_reduced) + "\n";
  }

  const bool pass = worst_cancellation < config.tolerance;

  RunArtifacts artifacts;
  artifacts.result = record_skeleton(config);
  artifacts.result["outputs"] = {
      {"azimuthal_cancellation_max", worst_cancellation},
      {"fields_tested", kFields},
      {"factorization_terms",
       {{"mass", report.mass},
        {"radial", report.radial},
        {"azimuthal_cancellation", report.azimuthal_cancellation},
        {"azimuthal_transport", report.azimuthal_transport},
        {"local_scalar", report.local_scalar},
        {"total", report.total}}},
      {"convergence_slope_full", loglog_slope(full_pts)},
      {"convergence_slope_reduced", loglog_slope(reduced_pts)},
      {"pass", pass}};
  artifacts.table = std::move(csv);
  artifacts.exit_code = pass ? 0 : 2;
  return artifacts;
}

RunArtifacts run_sweep(const RunConfig& config) {
  const GammaBasis basis = build_gamma_basis();
  const FieldConfiguration fc = config.fields.build();
  const TimeLeg leg{config.tau};
  const SweepSettings& sweep = *config.sweep;

  const PhaseResult analytic = analytic_phase(fc, config.params, leg, basis);

  std::string csv = "value,deviation,runtime_seconds\n";
  double max_dev = 0.0;
  std::vector<std::array<double, 2>> grid_pts;

  for (const double value : sweep.values) {
    const auto start = std::chrono::steady_clock::now();
    double deviation = 0.0;
    switch (sweep.axis) {
      case SweepAxis::Segments: {
        const int n = static_cast<int>(value);
        if (n < 1) fail("$.sweep.values", "segment counts must be >= 1");
        const LoopPath path{config.loop.radius, 0.0, config.loop.orientation, n, {}};
        const PhaseResult numeric =
            compute_phase(fc, config.params, path, leg, basis);
        deviation = max_abs_distance(numeric.phi, analytic.phi);
        break;
      }
      case SweepAxis::Radius: {
        if (!(value > 0.0)) fail("$.sweep.values", "radii must be > 0");
        const LoopPath path{value, 0.0, config.loop.orientation,
                            config.loop.segments, {}};
        const PhaseResult numeric =
            compute_phase(fc, config.params, path, leg, basis);
        deviation = max_abs_distance(numeric.phi, analytic.phi);
        break;
      }
      case SweepAxis::Grid: {
        const int m = static_cast<int>(value);
        if (m < 1) fail("$.sweep.values", "grid multipliers must be >= 1");
        const PolarGrid fine(config.grid.r_min, config.grid.r_max,
                             (config.grid.nr - 1) * m + 1, config.grid.nphi * m);
        deviation = operator_error(canonical_mode(), fine, fc, config.params,
                                   basis, false);
        grid_pts.push_back({fine.dr(), deviation});
        break;
      }
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    max_dev = std::max(max_dev, deviation);
    csv += format_double(value) + "," + format_double(deviation) + "," +
           format_double(elapsed.count()) + "\n";
  }

  RunArtifacts artifacts;
  artifacts.result = record_skeleton(config);
  json outputs = {{"points", sweep.values.size()}, {"max_deviation", max_dev}};
  if (sweep.axis == SweepAxis::Grid && grid_pts.size() >= 2)
    outputs["convergence_slope"] = loglog_slope(grid_pts);
  artifacts.result["outputs"] = outputs;
  artifacts.table = std::move(csv);
  return artifacts;
}

}  // namespace

RunArtifacts run_experiment(const RunConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::Phase: return run_phase(config);
    case ExperimentKind::Verify: return run_verify(config);
    case ExperimentKind::Potential: return run_potential(config);
    case ExperimentKind::DiagnoseFactorization: return run_diagnose(config);
    case ExperimentKind::Sweep: return run_sweep(config);
  }
  throw ConfigError("config error: unknown experiment kind");
}

void write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "result.json", std::ios::binary);
    out << artifacts.result.dump(2) << "\n";
  }
  if (artifacts.table) {
    std::ofstream out(fs::path(out_dir) / "table.csv", std::ios::binary);
    out << *artifacts.table;
  }
}

}  // namespace diraclab

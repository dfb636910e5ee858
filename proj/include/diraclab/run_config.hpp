// Config-driven experiment runner behind the command-line tool.
//
// Configs are JSON documents validated against a closed schema (unknown
// keys are rejected with their path).  Running an experiment produces a
// deterministic result record -- identical config and seed give byte-
// identical JSON -- plus an optional CSV table; timestamps live in a
// separate metadata file written by the tool, never in the record.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diraclab/em_fields.hpp"

namespace diraclab {

enum class ExperimentKind { Phase, Verify, Potential, DiagnoseFactorization, Sweep };

std::string_view to_string(ExperimentKind kind);

enum class SweepAxis { Segments, Radius, Grid };

struct LoopSettings {
  double radius = 1.0;
  int segments = 1000;
  int orientation = +1;
};

struct GridSettings {
  double r_min = 1.0;
  double r_max = 2.0;
  int nr = 33;
  int nphi = 32;
};

struct SweepSettings {
  SweepAxis axis = SweepAxis::Segments;
  std::vector<double> values;
};

struct FieldSettings {
  bool wei = true;
  double lambda = 0.0;  // Wei
  double b0 = 0.0;      // Wei
  Vec3 e, b;            // uniform

  FieldConfiguration build() const {
    return wei ? FieldConfiguration::wei(lambda, b0)
               : FieldConfiguration::uniform(e, b);
  }
};

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Phase;
  FieldSettings fields;
  DipoleParams params;
  LoopSettings loop;
  GridSettings grid;
  double tau = 0.0;
  std::optional<std::uint64_t> seed;
  int draws = 100;
  double tolerance = 1e-12;
  std::optional<SweepSettings> sweep;
  std::string out_dir = "out";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ConfigError with the offending field path.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

// Canonical resolved form of the config, echoed into every result record.
nlohmann::json echo_config(const RunConfig& config);

struct RunArtifacts {
  nlohmann::json result;
  std::optional<std::string> table;  // CSV text
  int exit_code = 0;                 // 0 ok, 2 tolerance exceeded
};

RunArtifacts run_experiment(const RunConfig& config);

// Writes result.json (and table.csv when present) under out_dir.
void write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir);

// Locale-independent shortest round-trip formatting (CSV cells).
std::string format_double(double value);

}  // namespace diraclab

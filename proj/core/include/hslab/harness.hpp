#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hslab/dynamics.hpp"
#include "hslab/interval.hpp"

// Config-driven scenario execution behind the command-line front end.
// Configs are JSON; reports are JSON; series are CSV. Identical config plus
// seed produces byte-identical outputs: runs are single-threaded, output
// formatting is fixed, and nothing time- or host-dependent enters the files.
//
// Exit-code contract:
//   0  clean completion, including clean blow-up detection (blow-up is a
//      scientific result, not an error),
//   2  validation failure (config or data preconditions); messages name the
//      offending field,
//   3  numerical failure (nonfinite values without a blow-up signature).

namespace hslab {

enum class Scenario {
  IbvpMhs,
  IbvpDsk,
  IbvpHs2,
  CircleMhs,
  CircleHs2,
  CircleMuhs,
  MuDemo,
  ExtScan,
  Convergence,
  BlowupStudy,
};

const char* to_string(Scenario s);

struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_in, const std::string& message)
      : std::runtime_error(message), field(std::move(field_in)) {}
};

struct InitialDataSpec {
  enum class Kind { Zero, Sine, PolyXHalfMinusX, CustomFile, RandomTrig };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  int wavenumber = 1;     // sine: integer so the data is periodic-compatible
  std::string path;       // custom-file
  int max_mode = 8;       // random-trig
};

struct RunConfig {
  Scenario scenario = Scenario::CircleMhs;
  std::string run_id = "run";
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool quiet = false;

  int n = 256;
  int p = 1;
  int k = 1;
  InitialDataSpec initial;
  std::optional<InitialDataSpec> rho_initial;
  Controls controls;
  bool kappa_given = false;       // hs2 scenarios require an explicit kappa
  double mean_offset = 0.0;       // mu-demo: constant added to the circle data
  bool allow_even_p = false;      // circle-only exploration flag
  std::string write_snapshots = "ends";  // none | ends | all

  // convergence
  std::string convergence_mode = "spatial";  // spatial | temporal
  std::vector<int> ladder;
  int reference_n = 0;
  double fixed_dt = 1e-4;
  std::vector<double> dt_ladder;
  double reference_dt = 0.0;
  double t_compare = 0.1;

  // blowup-study
  std::vector<double> amplitudes;
  double slope_threshold_base = -80.0;  // scaled by the amplitude per run

  // ext-scan
  std::vector<double> s_values;
  std::vector<int> cutoffs;
  int scan_m = 512;
};

// Parse and validate a config file (or JSON text). Throws ConfigError with
// the offending field named.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& json_text);

// Command-line overrides applied after parsing.
struct HarnessOptions {
  std::optional<std::string> out_dir;  // --out, else config, else $HSLAB_OUT, else .
  std::optional<std::uint64_t> seed;   // --seed
  bool quiet = false;                  // --quiet
};

struct HarnessResult {
  int exit_code = 0;
  std::string report_path;
  std::vector<std::string> outputs;
};

// Execute a scenario end to end, writing all artifacts under out_dir.
HarnessResult execute_scenario(RunConfig config, const HarnessOptions& options = {});

// Build the initial data described by a spec (interval side, m samples).
IntervalFunction build_interval_data(const InitialDataSpec& spec, int m,
                                     std::uint64_t seed);

}  // namespace hslab

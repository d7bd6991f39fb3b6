#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmshare/config.hpp"
#include "mmshare/coverage.hpp"
#include "mmshare/mc.hpp"
#include "mmshare/model.hpp"

namespace mmshare::experiments {

enum class Engine { Analytical, Mc, Both };

enum class ExperimentKind {
  SinrCcdf,          // CCDF of SINR per system variant
  RateCcdf,          // CCDF of rate per system variant
  BeamwidthSweep,    // median rate vs beamwidth
  RequiredBandwidth, // per-op pool bandwidth matching the exclusive median
  SharingGroupSweep, // rate percentiles vs sharing group size
  DensitySweep,      // median rate vs one operator's BS density
};

struct ExperimentSpec {
  std::string name = "run";
  ExperimentKind kind = ExperimentKind::SinrCcdf;
  Engine engine = Engine::Analytical;
  std::string output_dir = "out";
  int user_op = 0;

  // Template for the system variants; systems lists which variants run.
  PresetBase base;
  std::vector<SystemPreset> systems;
  bool partial_loading = false;  // applied to every generated variant
  // When systems is empty the literal scenario runs instead.
  Scenario custom;

  double sinr_min_db = -30.0, sinr_max_db = 50.0, sinr_step_db = 1.0;
  double rate_min = 0.0, rate_max = 3e8;
  int rate_points = 61;
  double bw_min_deg = 5.0, bw_max_deg = 60.0, bw_step_deg = 5.0;
  double density_min_km2 = 5.0, density_max_km2 = 60.0,
         density_step_km2 = 5.0;

  mc::McConfig mc;
  quad::QuadSpec quad;
  ExecPolicy exec = ExecPolicy::Parallel;
};

struct RunResult {
  std::vector<std::string> csv_files;  // relative to output_dir
  std::string manifest_file;
  std::string plot_file;
};

RunResult run_experiment(const ExperimentSpec& spec, std::ostream& log);

// Built-in presets fig1..fig10.
std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
bool is_preset(const std::string& name);
ExperimentSpec make_preset(const std::string& name);

// experiment.* block plus scenario and mc.* blocks from one config file.
ExperimentSpec parse_experiment(const config::KeyValues& kv);

std::vector<double> linear_grid(double lo, double hi, double step);
std::vector<double> linspace(double lo, double hi, int points);

}  // namespace mmshare::experiments

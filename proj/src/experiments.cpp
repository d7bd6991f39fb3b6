#include "mmshare/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mmshare/units.hpp"

namespace fs = std::filesystem;

namespace mmshare::experiments {

namespace {

using config::ConfigError;

std::string fmt(double v, const char* f = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// Writes via a temp file plus rename so partially-written outputs never
// appear under the final name.
void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

struct Csv {
  std::string header;
  std::vector<std::vector<double>> rows;

  std::string render() const {
    std::string out = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += fmt(row[i]);
      }
      out += "\n";
    }
    return out;
  }
};

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SinrCcdf: return "sinr_ccdf";
    case ExperimentKind::RateCcdf: return "rate_ccdf";
    case ExperimentKind::BeamwidthSweep: return "beamwidth_sweep";
    case ExperimentKind::RequiredBandwidth: return "required_bandwidth";
    case ExperimentKind::SharingGroupSweep: return "sharing_group_sweep";
    case ExperimentKind::DensitySweep: return "density_sweep";
  }
  return "?";
}

ExperimentKind kind_from_name(const std::string& s) {
  for (ExperimentKind k :
       {ExperimentKind::SinrCcdf, ExperimentKind::RateCcdf,
        ExperimentKind::BeamwidthSweep, ExperimentKind::RequiredBandwidth,
        ExperimentKind::SharingGroupSweep, ExperimentKind::DensitySweep}) {
    if (s == kind_name(k)) return k;
  }
  throw ConfigError("unknown experiment kind '" + s + "'", 0,
                    "experiment.kind");
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Analytical: return "analytical";
    case Engine::Mc: return "mc";
    case Engine::Both: return "both";
  }
  return "?";
}

Engine engine_from_name(const std::string& s) {
  if (s == "analytical") return Engine::Analytical;
  if (s == "mc") return Engine::Mc;
  if (s == "both") return Engine::Both;
  throw ConfigError("unknown engine '" + s + "'", 0, "experiment.engine");
}

struct Variant {
  std::string label;
  Scenario sc;
};

std::vector<Variant> build_variants(const ExperimentSpec& spec) {
  std::vector<Variant> out;
  if (spec.systems.empty()) {
    out.push_back({"custom", spec.custom});
    return out;
  }
  for (SystemPreset sys : spec.systems) {
    Scenario sc = make_system_preset(sys, spec.base);
    sc.partial_loading = spec.partial_loading;
    out.push_back({system_preset_name(sys), sc});
  }
  return out;
}

Scenario with_beamwidth(Scenario sc, double deg) {
  sc.antenna.half_beamwidth = units::deg_to_rad(deg);
  sc.antenna.theta_3db = 2.0 * sc.antenna.half_beamwidth;
  return sc;
}

struct Emitter {
  fs::path dir;
  RunResult result;
  std::vector<std::pair<std::string, std::string>> plot_entries;  // file, title

  void csv(const std::string& file, const Csv& c, const std::string& title) {
    atomic_write(dir / file, c.render());
    result.csv_files.push_back(file);
    plot_entries.push_back({file, title});
  }
};

void run_ccdf(const ExperimentSpec& spec, Emitter& em, std::ostream& log) {
  const bool rate = spec.kind == ExperimentKind::RateCcdf;
  std::vector<double> grid_db, thresholds;
  if (rate) {
    thresholds = linspace(spec.rate_min, spec.rate_max, spec.rate_points);
  } else {
    grid_db = linear_grid(spec.sinr_min_db, spec.sinr_max_db, spec.sinr_step_db);
    for (double db : grid_db) thresholds.push_back(units::db_to_linear(db));
  }

  for (const Variant& v : build_variants(spec)) {
    assoc::LoadModel lm;
    bool have_lm = false;
    auto need_lm = [&]() -> const assoc::LoadModel& {
      if (!have_lm) {
        lm = assoc::compute_load_model(v.sc, spec.quad);
        have_lm = true;
      }
      return lm;
    };

    if (spec.engine != Engine::Mc) {
      DistributionCurve c;
      coverage::CoverageOptions opts{spec.quad, spec.exec};
      if (rate) {
        c = coverage::rate_coverage(v.sc, spec.user_op, thresholds, need_lm(),
                                    opts);
      } else {
        c = coverage::sinr_coverage(v.sc, spec.user_op, thresholds, opts);
      }
      Csv csv{"threshold,probability", {}};
      for (std::size_t i = 0; i < thresholds.size(); ++i) {
        csv.rows.push_back(
            {rate ? thresholds[i] : grid_db[i], c.probabilities[i]});
      }
      em.csv(spec.name + "_" + v.label + "_analytical.csv", csv,
             v.label + " analytical");
      log << "  " << v.label << " analytical done\n";
    }
    if (spec.engine != Engine::Analytical) {
      mc::McConfig cfg = spec.mc;
      cfg.exec = spec.exec;
      DistributionCurve c;
      if (rate) {
        c = mc::estimate_rate_ccdf(v.sc, cfg, spec.user_op, thresholds,
                                   need_lm());
      } else {
        const assoc::LoadModel* lmp =
            v.sc.partial_loading ? &need_lm() : nullptr;
        c = mc::estimate_sinr_ccdf(v.sc, cfg, spec.user_op, thresholds, lmp);
      }
      Csv csv{"threshold,probability,stderr", {}};
      for (std::size_t i = 0; i < thresholds.size(); ++i) {
        csv.rows.push_back({rate ? thresholds[i] : grid_db[i],
                            c.probabilities[i], c.stderrs[i]});
      }
      em.csv(spec.name + "_" + v.label + "_mc.csv", csv, v.label + " mc");
      log << "  " << v.label << " mc done (" << cfg.drops << " drops)\n";
    }
  }
}

void run_beamwidth_sweep(const ExperimentSpec& spec, Emitter& em,
                         std::ostream& log) {
  std::vector<double> bws =
      linear_grid(spec.bw_min_deg, spec.bw_max_deg, spec.bw_step_deg);
  for (const Variant& v : build_variants(spec)) {
    std::vector<double> median(bws.size(), 0.0);
    parallel_for(bws.size(), spec.exec, [&](std::size_t i) {
      Scenario sc = with_beamwidth(v.sc, bws[i]);
      auto lm = assoc::compute_load_model(sc, spec.quad);
      median[i] = coverage::median_rate(sc, spec.user_op, lm, spec.quad);
    });
    Csv csv{"beamwidth_deg,median_rate_bps", {}};
    for (std::size_t i = 0; i < bws.size(); ++i) {
      csv.rows.push_back({bws[i], median[i]});
    }
    em.csv(spec.name + "_" + v.label + ".csv", csv, v.label);
    log << "  " << v.label << " swept " << bws.size() << " beamwidths\n";
  }
}

void run_required_bandwidth(const ExperimentSpec& spec, Emitter& em,
                            std::ostream& log) {
  if (spec.systems.empty()) {
    throw ConfigError(
        "required_bandwidth compares the pooled variant against the "
        "exclusive one; it needs systems mode, not a custom scenario");
  }
  std::vector<double> bws =
      linear_grid(spec.bw_min_deg, spec.bw_max_deg, spec.bw_step_deg);
  const double base_bw = spec.base.operators[spec.user_op].bandwidth;
  std::vector<double> required(bws.size(), 0.0);
  parallel_for(bws.size(), spec.exec, [&](std::size_t i) {
    Scenario excl =
        with_beamwidth(make_system_preset(SystemPreset::Sys1, spec.base), bws[i]);
    auto lm_excl = assoc::compute_load_model(excl, spec.quad);
    double target =
        coverage::median_rate(excl, spec.user_op, lm_excl, spec.quad);
    Scenario pool =
        with_beamwidth(make_system_preset(SystemPreset::Sys3, spec.base), bws[i]);
    required[i] = coverage::required_bandwidth(
        pool, spec.user_op, target, 0.02 * base_bw, 3.0 * base_bw, spec.quad);
  });
  Csv csv{"beamwidth_deg,required_bw_mhz", {}};
  for (std::size_t i = 0; i < bws.size(); ++i) {
    csv.rows.push_back({bws[i], units::hz_to_mhz(required[i])});
  }
  em.csv(spec.name + ".csv", csv, "required per-operator bandwidth");
  log << "  solved " << bws.size() << " beamwidth points\n";
}

void run_sharing_group_sweep(const ExperimentSpec& spec, Emitter& em,
                             std::ostream& log) {
  const int M = static_cast<int>(spec.base.operators.size());
  std::vector<double> p25(M), p50(M), p75(M);
  parallel_for(static_cast<std::size_t>(M), spec.exec, [&](std::size_t gi) {
    int g = static_cast<int>(gi) + 1;
    Scenario sc;
    sc.operators = spec.base.operators;
    sc.channel = spec.base.channel;
    sc.antenna = spec.base.antenna;
    sc.blockage = spec.base.blockage;
    for (int m = 0; m < M; ++m) sc.access_sets.push_back({m});
    std::vector<int> pool;
    for (int m = 0; m < g; ++m) pool.push_back(m);
    sc.sharing_groups.push_back(pool);
    for (int m = g; m < M; ++m) sc.sharing_groups.push_back({m});
    auto lm = assoc::compute_load_model(sc, spec.quad);
    p25[gi] = coverage::rate_percentile(sc, spec.user_op, lm, 0.25, spec.quad);
    p50[gi] = coverage::rate_percentile(sc, spec.user_op, lm, 0.50, spec.quad);
    p75[gi] = coverage::rate_percentile(sc, spec.user_op, lm, 0.75, spec.quad);
  });
  auto emit = [&](const char* tag, const std::vector<double>& vals,
                  const char* title) {
    Csv csv{"group_size,rate_bps", {}};
    for (int g = 0; g < M; ++g) {
      csv.rows.push_back({static_cast<double>(g + 1), vals[g]});
    }
    em.csv(spec.name + "_" + tag + ".csv", csv, title);
  };
  emit("p25", p25, "25th percentile");
  emit("p50", p50, "median");
  emit("p75", p75, "75th percentile");
  log << "  swept group sizes 1.." << M << "\n";
}

void run_density_sweep(const ExperimentSpec& spec, Emitter& em,
                       std::ostream& log) {
  for (SystemPreset sys : spec.systems) {
    if (sys == SystemPreset::Sys4) {
      throw ConfigError(
          "density_sweep varies one operator's BS density; the co-located "
          "variant requires equal densities");
    }
  }
  std::vector<double> dens = linear_grid(spec.density_min_km2,
                                         spec.density_max_km2,
                                         spec.density_step_km2);
  const int M = static_cast<int>(spec.base.operators.size());
  for (SystemPreset sys : spec.systems) {
    // median[i * M + n] is operator n's median at density point i
    std::vector<double> median(dens.size() * M, 0.0);
    parallel_for(dens.size(), spec.exec, [&](std::size_t i) {
      PresetBase base = spec.base;
      base.operators[0].bs_density = units::per_km2_to_per_m2(dens[i]);
      Scenario sc = make_system_preset(sys, base);
      auto lm = assoc::compute_load_model(sc, spec.quad);
      for (int n = 0; n < M; ++n) {
        median[i * M + n] = coverage::median_rate(sc, n, lm, spec.quad);
      }
    });
    for (int n = 0; n < M; ++n) {
      Csv csv{"bs_density_per_km2,median_rate_bps", {}};
      for (std::size_t i = 0; i < dens.size(); ++i) {
        csv.rows.push_back({dens[i], median[i * M + n]});
      }
      std::string label =
          std::string(system_preset_name(sys)) + "_op" + std::to_string(n + 1);
      em.csv(spec.name + "_" + label + ".csv", csv, label);
    }
    log << "  " << system_preset_name(sys) << " swept " << dens.size()
        << " densities\n";
  }
}

std::string render_plot(const ExperimentSpec& spec,
                        const std::vector<std::pair<std::string, std::string>>&
                            entries) {
  std::ostringstream os;
  os << "# gnuplot script, generated with the data\n";
  os << "set datafile separator comma\n";
  os << "set key outside right\n";
  os << "set grid\n";
  const char* xlabel = "threshold";
  const char* ylabel = "CCDF";
  bool logx = false;
  switch (spec.kind) {
    case ExperimentKind::SinrCcdf: xlabel = "SINR threshold (dB)"; break;
    case ExperimentKind::RateCcdf: xlabel = "rate (bit/s)"; break;
    case ExperimentKind::BeamwidthSweep:
      xlabel = "beamwidth (deg)";
      ylabel = "median rate (bit/s)";
      break;
    case ExperimentKind::RequiredBandwidth:
      xlabel = "beamwidth (deg)";
      ylabel = "required per-operator bandwidth (MHz)";
      break;
    case ExperimentKind::SharingGroupSweep:
      xlabel = "sharing group size";
      ylabel = "rate (bit/s)";
      break;
    case ExperimentKind::DensitySweep:
      xlabel = "operator 1 BS density (per km^2)";
      ylabel = "median rate (bit/s)";
      break;
  }
  os << "set xlabel '" << xlabel << "'\n";
  os << "set ylabel '" << ylabel << "'\n";
  if (logx) os << "set logscale x\n";
  os << "plot \\\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool mc_points = entries[i].first.find("_mc.csv") != std::string::npos;
    os << "  '" << entries[i].first << "' skip 1 using 1:2 with "
       << (mc_points ? "points" : "lines") << " title '" << entries[i].second
       << "'";
    os << (i + 1 < entries.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

std::string render_manifest(const ExperimentSpec& spec, const Emitter& em,
                            double wall_seconds) {
  std::ostringstream os;
  os << "run.name = " << spec.name << "\n";
  os << "run.kind = " << kind_name(spec.kind) << "\n";
  os << "run.engine = " << engine_name(spec.engine) << "\n";
  os << "run.user_op = " << (spec.user_op + 1) << "\n";
  os << "run.threads = " << resolved_thread_count() << "\n";
  os << "run.wall_seconds = " << fmt(wall_seconds, "%.3f") << "\n";
  for (std::size_t i = 0; i < em.result.csv_files.size(); ++i) {
    os << "run.output." << (i + 1) << " = " << em.result.csv_files[i] << "\n";
  }
  switch (spec.kind) {
    case ExperimentKind::SinrCcdf:
      os << "grid.sinr_min_db = " << fmt(spec.sinr_min_db) << "\n";
      os << "grid.sinr_max_db = " << fmt(spec.sinr_max_db) << "\n";
      os << "grid.sinr_step_db = " << fmt(spec.sinr_step_db) << "\n";
      break;
    case ExperimentKind::RateCcdf:
      os << "grid.rate_min_bps = " << fmt(spec.rate_min) << "\n";
      os << "grid.rate_max_bps = " << fmt(spec.rate_max) << "\n";
      os << "grid.rate_points = " << spec.rate_points << "\n";
      break;
    case ExperimentKind::BeamwidthSweep:
    case ExperimentKind::RequiredBandwidth:
      os << "grid.beamwidth_min_deg = " << fmt(spec.bw_min_deg) << "\n";
      os << "grid.beamwidth_max_deg = " << fmt(spec.bw_max_deg) << "\n";
      os << "grid.beamwidth_step_deg = " << fmt(spec.bw_step_deg) << "\n";
      break;
    case ExperimentKind::SharingGroupSweep:
      break;
    case ExperimentKind::DensitySweep:
      os << "grid.density_min_per_km2 = " << fmt(spec.density_min_km2) << "\n";
      os << "grid.density_max_per_km2 = " << fmt(spec.density_max_km2) << "\n";
      os << "grid.density_step_per_km2 = " << fmt(spec.density_step_km2) << "\n";
      break;
  }
  for (const Variant& v : build_variants(spec)) {
    os << config::serialize_scenario(v.sc, "scenario." + v.label + ".");
  }
  if (spec.engine != Engine::Analytical) {
    os << config::serialize_mc(spec.mc);
  }
  return os.str();
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    double v = lo + i * step;
    if (v > hi + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("linspace needs >= 2 points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * i / (points - 1);
  }
  return out;
}

RunResult run_experiment(const ExperimentSpec& spec, std::ostream& log) {
  auto t0 = std::chrono::steady_clock::now();
  if (spec.kind != ExperimentKind::SinrCcdf &&
      spec.kind != ExperimentKind::RateCcdf && spec.engine != Engine::Analytical) {
    throw ConfigError(std::string("experiment kind ") + kind_name(spec.kind) +
                      " supports the analytical engine only");
  }
  for (const Variant& v : build_variants(spec)) {
    auto violations = validate(v.sc);
    if (!violations.empty()) {
      std::string msg = "variant " + v.label + " invalid:";
      for (const auto& viol : violations) {
        msg += "\n  " + viol.field + ": " + viol.message;
      }
      throw ConfigError(msg);
    }
  }

  Emitter em;
  em.dir = spec.output_dir;
  fs::create_directories(em.dir);
  log << "experiment " << spec.name << " (" << kind_name(spec.kind) << ", "
      << engine_name(spec.engine) << " engine, " << resolved_thread_count()
      << " threads)\n";

  switch (spec.kind) {
    case ExperimentKind::SinrCcdf:
    case ExperimentKind::RateCcdf:
      run_ccdf(spec, em, log);
      break;
    case ExperimentKind::BeamwidthSweep:
      run_beamwidth_sweep(spec, em, log);
      break;
    case ExperimentKind::RequiredBandwidth:
      run_required_bandwidth(spec, em, log);
      break;
    case ExperimentKind::SharingGroupSweep:
      run_sharing_group_sweep(spec, em, log);
      break;
    case ExperimentKind::DensitySweep:
      run_density_sweep(spec, em, log);
      break;
  }

  std::string plot_file = spec.name + ".gp";
  atomic_write(em.dir / plot_file, render_plot(spec, em.plot_entries));
  em.result.plot_file = plot_file;

  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::string manifest_file = spec.name + "_manifest.txt";
  atomic_write(em.dir / manifest_file, render_manifest(spec, em, wall));
  em.result.manifest_file = manifest_file;

  log << "wrote " << em.result.csv_files.size() << " csv files, " << plot_file
      << " and " << manifest_file << " to " << em.dir.string() << " in "
      << fmt(wall, "%.1f") << " s\n";
  return em.result;
}

namespace {

PresetBase urban_28ghz_base(int ops) {
  using namespace units;
  OperatorParams op;
  op.bs_density = per_km2_to_per_m2(30.0);
  op.user_density = per_km2_to_per_m2(200.0);
  op.tx_power = dbm_to_watts(26.0);
  op.bandwidth = mhz_to_hz(100.0);

  PresetBase base;
  base.operators.assign(ops, op);
  base.channel.alpha_los = 2.0;
  base.channel.alpha_nlos = 4.0;
  base.channel.gain_los = db_to_linear(-60.0);
  base.channel.gain_nlos = db_to_linear(-70.0);
  base.channel.carrier_ghz = 28.0;
  base.channel.noise_density = dbm_to_watts(-174.0 + 10.0);
  base.antenna.g_main = db_to_linear(18.0);
  base.antenna.g_side = db_to_linear(-2.0);
  base.antenna.half_beamwidth = deg_to_rad(10.0);
  base.antenna.theta_3db = deg_to_rad(20.0);
  base.antenna.max_attenuation_db = 20.0;
  base.blockage.beta = 0.007;
  return base;
}

const std::vector<SystemPreset> kAllSystems = {
    SystemPreset::Sys1, SystemPreset::Sys2, SystemPreset::Sys3,
    SystemPreset::Sys4};

struct PresetInfo {
  const char* name;
  const char* description;
  ExperimentSpec (*build)();
};

const PresetInfo kPresets[] = {
    {"fig1", "SINR coverage for the four sharing configurations",
     [] {
       ExperimentSpec s;
       s.name = "fig1";
       s.kind = ExperimentKind::SinrCcdf;
       s.engine = Engine::Both;
       s.base = urban_28ghz_base(2);
       s.systems = kAllSystems;
       return s;
     }},
    {"fig2", "rate coverage, Rayleigh fading, PPP deployments",
     [] {
       ExperimentSpec s;
       s.name = "fig2";
       s.kind = ExperimentKind::RateCcdf;
       s.engine = Engine::Both;
       s.base = urban_28ghz_base(2);
       s.systems = kAllSystems;
       return s;
     }},
    {"fig3",
     "rate coverage on square-grid deployments with parabolic beams and "
     "shadowing (MC only)",
     [] {
       ExperimentSpec s;
       s.name = "fig3";
       s.kind = ExperimentKind::RateCcdf;
       s.engine = Engine::Mc;
       s.base = urban_28ghz_base(2);
       s.base.antenna.kind = AntennaKind::Parabolic;
       s.systems = kAllSystems;
       s.mc.deployment = mc::Deployment::ShiftedGrid;
       s.mc.shadowing.enabled = true;
       return s;
     }},
    {"fig4", "rate coverage with Nakagami fading (MC only)",
     [] {
       ExperimentSpec s;
       s.name = "fig4";
       s.kind = ExperimentKind::RateCcdf;
       s.engine = Engine::Mc;
       s.base = urban_28ghz_base(2);
       s.systems = kAllSystems;
       s.mc.fading.kind = mc::FadingSpec::Kind::Nakagami;
       s.mc.fading.nakagami_m = 10.0;
       return s;
     }},
    {"fig5", "median rate against beamwidth",
     [] {
       ExperimentSpec s;
       s.name = "fig5";
       s.kind = ExperimentKind::BeamwidthSweep;
       s.base = urban_28ghz_base(2);
       s.systems = kAllSystems;
       return s;
     }},
    {"fig6",
     "per-operator bandwidth the pooled open-access variant needs to match "
     "the exclusive median rate",
     [] {
       ExperimentSpec s;
       s.name = "fig6";
       s.kind = ExperimentKind::RequiredBandwidth;
       s.base = urban_28ghz_base(2);
       s.systems = {SystemPreset::Sys1, SystemPreset::Sys3};
       s.bw_min_deg = 5.0;
       s.bw_max_deg = 25.0;
       s.bw_step_deg = 5.0;
       return s;
     }},
    {"fig7", "rate coverage under partial loading (30 users per km^2)",
     [] {
       ExperimentSpec s;
       s.name = "fig7";
       s.kind = ExperimentKind::RateCcdf;
       s.engine = Engine::Both;
       s.base = urban_28ghz_base(2);
       for (auto& op : s.base.operators) {
         op.user_density = units::per_km2_to_per_m2(30.0);
       }
       s.partial_loading = true;
       s.systems = kAllSystems;
       s.rate_max = 1.5e9;
       return s;
     }},
    {"fig8", "rate coverage at 73 GHz with 1 GHz licenses",
     [] {
       ExperimentSpec s;
       s.name = "fig8";
       s.kind = ExperimentKind::RateCcdf;
       s.engine = Engine::Both;
       s.base = urban_28ghz_base(2);
       s.base.channel.carrier_ghz = 73.0;
       s.base.channel.gain_los = units::db_to_linear(-68.32);
       s.base.channel.gain_nlos = units::db_to_linear(-78.32);
       for (auto& op : s.base.operators) {
         op.bandwidth = units::mhz_to_hz(1000.0);
       }
       s.systems = kAllSystems;
       s.rate_max = 3e9;
       return s;
     }},
    {"fig9", "rate percentiles against sharing group size, ten operators",
     [] {
       ExperimentSpec s;
       s.name = "fig9";
       s.kind = ExperimentKind::SharingGroupSweep;
       s.base = urban_28ghz_base(10);
       for (auto& op : s.base.operators) {
         op.bandwidth = units::mhz_to_hz(50.0);
       }
       return s;
     }},
    {"fig10",
     "median rate against operator 1 BS density, pooled vs exclusive",
     [] {
       ExperimentSpec s;
       s.name = "fig10";
       s.kind = ExperimentKind::DensitySweep;
       s.base = urban_28ghz_base(2);
       s.systems = {SystemPreset::Sys1, SystemPreset::Sys3};
       return s;
     }},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.push_back(p.name);
  return out;
}

bool is_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return true;
  }
  return false;
}

std::string preset_description(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return p.description;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

ExperimentSpec make_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return p.build();
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

ExperimentSpec parse_experiment(const config::KeyValues& kv) {
  ExperimentSpec spec;
  spec.kind = kind_from_name(kv.get_string("experiment.kind"));
  spec.name = kv.get_string_or("experiment.name", kind_name(spec.kind));
  spec.engine =
      engine_from_name(kv.get_string_or("experiment.engine", "analytical"));
  spec.output_dir = kv.get_string_or("experiment.output_dir", "out");
  spec.user_op = kv.get_int_or("experiment.user_op", 1) - 1;

  Scenario sc = config::parse_scenario(kv);
  if (spec.user_op < 0 || spec.user_op >= sc.num_operators()) {
    throw ConfigError("user_op out of range", 0, "experiment.user_op");
  }

  if (kv.has("experiment.systems")) {
    for (int v : kv.get_int_list("experiment.systems")) {
      switch (v) {
        case 1: spec.systems.push_back(SystemPreset::Sys1); break;
        case 2: spec.systems.push_back(SystemPreset::Sys2); break;
        case 3: spec.systems.push_back(SystemPreset::Sys3); break;
        case 4: spec.systems.push_back(SystemPreset::Sys4); break;
        default:
          throw ConfigError("system variants are 1..4", 0,
                            "experiment.systems");
      }
    }
    spec.base.operators = sc.operators;
    spec.base.channel = sc.channel;
    spec.base.antenna = sc.antenna;
    spec.base.blockage = sc.blockage;
    spec.partial_loading = sc.partial_loading;
  } else {
    spec.custom = sc;
  }

  spec.sinr_min_db = kv.get_double_or("experiment.sinr_min_db", spec.sinr_min_db);
  spec.sinr_max_db = kv.get_double_or("experiment.sinr_max_db", spec.sinr_max_db);
  spec.sinr_step_db =
      kv.get_double_or("experiment.sinr_step_db", spec.sinr_step_db);
  spec.rate_min = kv.get_double_or("experiment.rate_min_bps", spec.rate_min);
  spec.rate_max = kv.get_double_or("experiment.rate_max_bps", spec.rate_max);
  spec.rate_points = kv.get_int_or("experiment.rate_points", spec.rate_points);
  spec.bw_min_deg = kv.get_double_or("experiment.beamwidth_min_deg", spec.bw_min_deg);
  spec.bw_max_deg = kv.get_double_or("experiment.beamwidth_max_deg", spec.bw_max_deg);
  spec.bw_step_deg =
      kv.get_double_or("experiment.beamwidth_step_deg", spec.bw_step_deg);
  spec.density_min_km2 =
      kv.get_double_or("experiment.density_min_per_km2", spec.density_min_km2);
  spec.density_max_km2 =
      kv.get_double_or("experiment.density_max_per_km2", spec.density_max_km2);
  spec.density_step_km2 = kv.get_double_or("experiment.density_step_per_km2",
                                           spec.density_step_km2);

  std::string exec = kv.get_string_or("experiment.exec", "parallel");
  if (exec == "parallel") {
    spec.exec = ExecPolicy::Parallel;
  } else if (exec == "serial") {
    spec.exec = ExecPolicy::Serial;
  } else {
    throw ConfigError("exec must be parallel or serial", 0, "experiment.exec");
  }
  spec.quad.rel_tol = kv.get_double_or("experiment.quad_rel_tol", 1e-8);
  spec.quad.abs_tol = kv.get_double_or("experiment.quad_abs_tol", 1e-12);

  spec.mc = config::parse_mc(kv);

  auto unused = kv.unused_keys();
  if (!unused.empty()) {
    std::string msg = "unrecognized keys:";
    for (const auto& k : unused) msg += " " + k;
    throw ConfigError(msg);
  }
  return spec;
}

}  // namespace mmshare::experiments

#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mmshare/experiments.hpp"
#include "mmshare/units.hpp"

namespace fs = std::filesystem;
using namespace mmshare;
using namespace mmshare::experiments;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mmshare_exp_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Table {
  std::string header;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const fs::path& p) {
  Table t;
  std::istringstream in(slurp(p));
  REQUIRE(std::getline(in, t.header));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    t.rows.push_back(row);
  }
  return t;
}

// A tiny, quick variant of the default SINR experiment.
ExperimentSpec tiny_spec(const fs::path& dir) {
  ExperimentSpec spec = make_preset("fig1");
  spec.name = "tiny";
  spec.output_dir = dir.string();
  spec.systems = {SystemPreset::Sys1, SystemPreset::Sys3};
  spec.sinr_min_db = -10.0;
  spec.sinr_max_db = 10.0;
  spec.sinr_step_db = 5.0;
  spec.mc.drops = 2000;
  spec.mc.seed = 5;
  return spec;
}

}  // namespace

TEST_CASE("grid helpers") {
  CHECK(linear_grid(5.0, 25.0, 5.0) ==
        std::vector<double>{5.0, 10.0, 15.0, 20.0, 25.0});
  CHECK(linear_grid(-30.0, 50.0, 1.0).size() == 81);  // endpoint survives fp
  CHECK(linspace(0.0, 1.0, 3) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("preset table is complete and constructible") {
  auto names = preset_names();
  REQUIRE(names.size() == 10);
  for (int i = 1; i <= 10; ++i) {
    std::string name = "fig" + std::to_string(i);
    CHECK(names[i - 1] == name);
    CHECK(is_preset(name));
    CHECK_FALSE(preset_description(name).empty());
    ExperimentSpec spec = make_preset(name);
    CHECK(spec.name == name);
    CHECK_FALSE(spec.base.operators.empty());
  }
  CHECK_FALSE(is_preset("fig11"));
  CHECK_THROWS_AS(make_preset("fig11"), std::invalid_argument);
  CHECK_THROWS_AS(preset_description(""), std::invalid_argument);
}

TEST_CASE("ccdf experiment writes csvs, plot script and manifest") {
  TempDir tmp;
  ExperimentSpec spec = tiny_spec(tmp.path);
  spec.engine = Engine::Both;
  std::ostringstream log;
  RunResult res = run_experiment(spec, log);

  REQUIRE(res.csv_files.size() == 4);  // 2 variants x 2 engines
  for (const auto& f : res.csv_files) CHECK(fs::exists(tmp.path / f));
  CHECK(fs::exists(tmp.path / res.plot_file));
  CHECK(fs::exists(tmp.path / res.manifest_file));
  CHECK(log.str().find("sys1") != std::string::npos);

  for (const auto& f : res.csv_files) {
    Table t = read_csv(tmp.path / f);
    bool mc = f.find("_mc") != std::string::npos;
    CHECK(t.header ==
          (mc ? "threshold,probability,stderr" : "threshold,probability"));
    REQUIRE(t.rows.size() == 5);  // -10:5:10 dB
    double prev = 1.0;
    for (const auto& row : t.rows) {
      REQUIRE(row.size() == (mc ? 3u : 2u));
      CHECK(row[1] >= 0.0);
      CHECK(row[1] <= 1.0);
      CHECK(row[1] <= prev + 1e-12);  // CCDF falls with the threshold
      prev = row[1];
      if (mc) CHECK(row[2] >= 0.0);
    }
  }

  // The plot script references every csv.
  std::string plot = slurp(tmp.path / res.plot_file);
  for (const auto& f : res.csv_files) {
    CHECK(plot.find(f) != std::string::npos);
  }
}

TEST_CASE("manifest embeds reparseable scenarios and run settings") {
  TempDir tmp;
  ExperimentSpec spec = tiny_spec(tmp.path);
  spec.engine = Engine::Analytical;
  std::ostringstream log;
  RunResult res = run_experiment(spec, log);

  auto kv = config::KeyValues::parse_file((tmp.path / res.manifest_file).string());
  CHECK(kv.get_string("run.name") == "tiny");
  CHECK(kv.get_string("run.kind") == "sinr_ccdf");
  CHECK(kv.get_string("run.engine") == "analytical");
  CHECK(kv.get_double("grid.sinr_step_db") == 5.0);
  CHECK(kv.get_string("run.output.1") == res.csv_files[0]);

  for (const char* label : {"sys1", "sys3"}) {
    Scenario sc = config::parse_scenario(kv, "scenario." + std::string(label) + ".");
    CHECK(sc.num_operators() == 2);
    CHECK(validate(sc).empty());
  }
  // The exclusive variant keeps per-operator licensing; the pooled one merges.
  Scenario s1 = config::parse_scenario(kv, "scenario.sys1.");
  Scenario s3 = config::parse_scenario(kv, "scenario.sys3.");
  CHECK(s1.sharing_groups.size() == 2);
  CHECK(s3.sharing_groups.size() == 1);
}

TEST_CASE("reruns with one seed reproduce output files byte for byte") {
  TempDir a, b;
  ExperimentSpec sa = tiny_spec(a.path);
  ExperimentSpec sb = tiny_spec(b.path);
  sa.engine = sb.engine = Engine::Both;
  std::ostringstream log;
  RunResult ra = run_experiment(sa, log);
  RunResult rb = run_experiment(sb, log);
  REQUIRE(ra.csv_files == rb.csv_files);
  for (const auto& f : ra.csv_files) {
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
  CHECK(slurp(a.path / ra.plot_file) == slurp(b.path / rb.plot_file));
}

TEST_CASE("sweep kinds accept only the analytical engine") {
  TempDir tmp;
  for (auto kind :
       {ExperimentKind::BeamwidthSweep, ExperimentKind::RequiredBandwidth,
        ExperimentKind::SharingGroupSweep, ExperimentKind::DensitySweep}) {
    ExperimentSpec spec = tiny_spec(tmp.path);
    spec.kind = kind;
    spec.engine = Engine::Mc;
    std::ostringstream log;
    CHECK_THROWS_AS(run_experiment(spec, log), config::ConfigError);
  }
}

TEST_CASE("bandwidth matching requires the systems form") {
  TempDir tmp;
  ExperimentSpec spec = tiny_spec(tmp.path);
  spec.kind = ExperimentKind::RequiredBandwidth;
  spec.systems.clear();
  spec.custom = make_system_preset(SystemPreset::Sys1, spec.base);
  std::ostringstream log;
  CHECK_THROWS_AS(run_experiment(spec, log), config::ConfigError);
}

TEST_CASE("density sweep rejects the equal-density variant") {
  TempDir tmp;
  ExperimentSpec spec = tiny_spec(tmp.path);
  spec.kind = ExperimentKind::DensitySweep;
  spec.systems = {SystemPreset::Sys4};
  std::ostringstream log;
  CHECK_THROWS_AS(run_experiment(spec, log), config::ConfigError);
}

TEST_CASE("experiment config files parse into specs") {
  std::string scenario = config::serialize_scenario(
      make_system_preset(SystemPreset::Sys2, make_preset("fig1").base));
  std::string text = scenario +
                     "experiment.kind = rate_ccdf\n"
                     "experiment.name = demo\n"
                     "experiment.engine = both\n"
                     "experiment.user_op = 2\n"
                     "experiment.systems = 1 3 4\n"
                     "experiment.rate_points = 11\n"
                     "experiment.exec = serial\n"
                     "mc.drops = 123\n";
  ExperimentSpec spec = parse_experiment(config::KeyValues::parse_text(text));
  CHECK(spec.kind == ExperimentKind::RateCcdf);
  CHECK(spec.name == "demo");
  CHECK(spec.engine == Engine::Both);
  CHECK(spec.user_op == 1);
  CHECK(spec.systems == std::vector<SystemPreset>{SystemPreset::Sys1,
                                                  SystemPreset::Sys3,
                                                  SystemPreset::Sys4});
  CHECK(spec.rate_points == 11);
  CHECK(spec.exec == ExecPolicy::Serial);
  CHECK(spec.mc.drops == 123);
  CHECK(spec.base.operators.size() == 2);

  // Without a systems list the scenario runs verbatim.
  ExperimentSpec lit = parse_experiment(config::KeyValues::parse_text(
      scenario + "experiment.kind = sinr_ccdf\n"));
  CHECK(lit.systems.empty());
  CHECK(lit.custom.sharing_groups.size() == 1);
}

TEST_CASE("experiment config rejects bad settings with context") {
  std::string scenario = config::serialize_scenario(
      make_system_preset(SystemPreset::Sys1, make_preset("fig1").base));
  auto parse = [&](const std::string& extra) {
    return parse_experiment(
        config::KeyValues::parse_text(scenario + "experiment.kind = sinr_ccdf\n" + extra));
  };
  CHECK_THROWS_AS(parse("experiment.systems = 1 5\n"), config::ConfigError);
  CHECK_THROWS_AS(parse("experiment.user_op = 3\n"), config::ConfigError);
  CHECK_THROWS_AS(parse("experiment.exec = turbo\n"), config::ConfigError);
  CHECK_THROWS_AS(parse("experiment.typo_knob = 1\n"), config::ConfigError);
  CHECK_THROWS_AS(
      parse_experiment(config::KeyValues::parse_text(
          scenario + "experiment.kind = warp_field\n")),
      config::ConfigError);
}

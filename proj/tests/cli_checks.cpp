// End-to-end checks for the mmshare binary. argv[1] is the binary path;
// commands run through the shell with stdout/stderr captured to files.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mmshare/config.hpp"
#include "mmshare/experiments.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

fs::path work_dir;

CmdResult run_cmd(const std::string& cmd) {
  fs::path out = work_dir / "stdout.txt";
  fs::path err = work_dir / "stderr.txt";
  std::string full = cmd + " > " + out.string() + " 2> " + err.string();
  int status = std::system(full.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_checks <mmshare binary>\n";
    return 64;
  }
  std::string bin = argv[1];
  work_dir = fs::temp_directory_path() /
             ("mmshare_cli_" + std::to_string(::getpid()));
  fs::create_directories(work_dir);

  // list: names and descriptions for every built-in experiment
  {
    CmdResult r = run_cmd(bin + " list");
    expect(r.exit_code == 0, "list exits 0");
    for (int i = 1; i <= 10; ++i) {
      std::string name = "fig" + std::to_string(i);
      expect(r.out.find(name) != std::string::npos, "list mentions " + name);
    }
    expect(r.out.find("beamwidth") != std::string::npos,
           "list shows descriptions");
  }

  // a small pooled two-operator scenario shared by the config-driven runs
  std::string scenario = mmshare::config::serialize_scenario(
      mmshare::make_system_preset(mmshare::SystemPreset::Sys3,
                                  mmshare::experiments::make_preset("fig1").base));

  // run, analytical engine: csv with the two-column header
  {
    fs::path cfg = work_dir / "tiny.cfg";
    fs::path out = work_dir / "tiny_out";
    write_file(cfg, scenario +
                        "experiment.kind = sinr_ccdf\n"
                        "experiment.name = tiny\n"
                        "experiment.sinr_min_db = -5\n"
                        "experiment.sinr_max_db = 5\n"
                        "experiment.sinr_step_db = 5\n"
                        "experiment.output_dir = " +
                        out.string() + "\n");
    CmdResult r = run_cmd(bin + " run " + cfg.string());
    expect(r.exit_code == 0, "analytical run exits 0, got " +
                                 std::to_string(r.exit_code) + ": " + r.err);
    fs::path csv = out / "tiny_custom_analytical.csv";
    expect(fs::exists(csv), "analytical run writes the csv");
    expect(first_line(slurp(csv)) == "threshold,probability",
           "analytical csv header");
    expect(fs::exists(out / "tiny_manifest.txt"), "run writes a manifest");
    expect(fs::exists(out / "tiny.gp"), "run writes a plot script");
  }

  // run, mc engine: csv gains the stderr column
  {
    fs::path cfg = work_dir / "tiny_mc.cfg";
    fs::path out = work_dir / "tiny_mc_out";
    write_file(cfg, scenario +
                        "experiment.kind = sinr_ccdf\n"
                        "experiment.name = tiny\n"
                        "experiment.engine = mc\n"
                        "experiment.sinr_min_db = 0\n"
                        "experiment.sinr_max_db = 0\n"
                        "experiment.sinr_step_db = 1\n"
                        "mc.drops = 400\n"
                        "experiment.output_dir = " +
                        out.string() + "\n");
    CmdResult r = run_cmd(bin + " run " + cfg.string());
    expect(r.exit_code == 0, "mc run exits 0, got " +
                                 std::to_string(r.exit_code) + ": " + r.err);
    fs::path csv = out / "tiny_custom_mc.csv";
    expect(fs::exists(csv), "mc run writes the csv");
    expect(first_line(slurp(csv)) == "threshold,probability,stderr",
           "mc csv header");
  }

  // config mistakes exit 2 and name the offending key
  {
    fs::path cfg = work_dir / "bad.cfg";
    write_file(cfg, scenario +
                        "experiment.kind = sinr_ccdf\n"
                        "experiment.typo_knob = 1\n");
    CmdResult r = run_cmd(bin + " run " + cfg.string());
    expect(r.exit_code == 2, "unknown key exits 2");
    expect(r.err.find("typo_knob") != std::string::npos,
           "error names the bad key");
  }
  {
    CmdResult r = run_cmd(bin + " run " + (work_dir / "absent.cfg").string());
    expect(r.exit_code == 2, "missing config file exits 2");
  }

  // unattainable quadrature tolerances exit 3 as a numerical failure
  {
    fs::path cfg = work_dir / "strict.cfg";
    fs::path out = work_dir / "strict_out";
    write_file(cfg, scenario +
                        "experiment.kind = sinr_ccdf\n"
                        "experiment.sinr_min_db = 0\n"
                        "experiment.sinr_max_db = 0\n"
                        "experiment.sinr_step_db = 1\n"
                        "experiment.quad_rel_tol = 1e-30\n"
                        "experiment.quad_abs_tol = 1e-300\n"
                        "experiment.output_dir = " +
                        out.string() + "\n");
    CmdResult r = run_cmd(bin + " run " + cfg.string());
    expect(r.exit_code == 3, "impossible tolerance exits 3, got " +
                                 std::to_string(r.exit_code));
    expect(r.err.find("numerical failure") != std::string::npos,
           "numerical failures are labeled");
  }

  // argument errors: no subcommand, unknown subcommand, unknown preset
  expect(run_cmd(bin).exit_code != 0, "missing subcommand fails");
  expect(run_cmd(bin + " frobnicate").exit_code != 0,
         "unknown subcommand fails");
  expect(run_cmd(bin + " preset fig99").exit_code == 2,
         "unknown preset exits 2");
  expect(run_cmd(bin + " preset fig1 --engine turbo").exit_code == 2,
         "unknown engine exits 2");
  expect(run_cmd(bin + " run").exit_code != 0, "run without a config fails");

  // preset happy path with engine, seed and output overrides
  {
    fs::path out = work_dir / "preset_out";
    CmdResult r = run_cmd(bin + " preset fig1 --engine mc --seed 3 --out " +
                          out.string());
    expect(r.exit_code == 0, "preset run exits 0, got " +
                                 std::to_string(r.exit_code) + ": " + r.err);
    for (const char* sys : {"sys1", "sys2", "sys3", "sys4"}) {
      fs::path csv = out / ("fig1_" + std::string(sys) + "_mc.csv");
      expect(fs::exists(csv), std::string("preset writes ") + csv.string());
    }
    expect(!fs::exists(out / "fig1_sys1_analytical.csv"),
           "--engine mc suppresses the analytical pass");
  }

  fs::remove_all(work_dir);
  if (failures == 0) std::cout << "cli checks passed\n";
  return failures;
}

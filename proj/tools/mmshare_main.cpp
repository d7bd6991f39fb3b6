#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mmshare/config.hpp"
#include "mmshare/experiments.hpp"
#include "mmshare/parallel.hpp"

namespace {

int run_config(const std::string& path) {
  auto kv = mmshare::config::KeyValues::parse_file(path);
  auto spec = mmshare::experiments::parse_experiment(kv);
  mmshare::experiments::run_experiment(spec, std::cout);
  return 0;
}

int run_preset(const std::string& name, const std::string& engine,
               long long seed, const std::string& out) {
  if (!mmshare::experiments::is_preset(name)) {
    std::cerr << "unknown preset '" << name << "'; see 'mmshare list'\n";
    return 2;
  }
  auto spec = mmshare::experiments::make_preset(name);
  if (!engine.empty()) {
    if (engine == "analytical") {
      spec.engine = mmshare::experiments::Engine::Analytical;
    } else if (engine == "mc") {
      spec.engine = mmshare::experiments::Engine::Mc;
    } else if (engine == "both") {
      spec.engine = mmshare::experiments::Engine::Both;
    } else {
      std::cerr << "engine must be analytical, mc or both\n";
      return 2;
    }
  }
  if (seed >= 0) spec.mc.seed = static_cast<std::uint64_t>(seed);
  if (!out.empty()) spec.output_dir = out;
  mmshare::experiments::run_experiment(spec, std::cout);
  return 0;
}

int list_presets() {
  for (const auto& name : mmshare::experiments::preset_names()) {
    std::printf("%-7s %s\n", name.c_str(),
                mmshare::experiments::preset_description(name).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mmshare: spectrum license sharing trade-offs for mmWave cellular "
      "(analytical and Monte Carlo engines). MMSHARE_THREADS caps the worker "
      "count."};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  run->add_option("config", config_path, "experiment config file")->required();

  auto* preset = app.add_subcommand("preset", "run a built-in experiment");
  std::string preset_name, engine, out;
  long long seed = -1;
  preset->add_option("name", preset_name, "preset name (see 'list')")
      ->required();
  preset->add_option("--engine", engine, "analytical, mc or both");
  preset->add_option("--seed", seed, "Monte Carlo seed");
  preset->add_option("--out", out, "output directory");

  auto* list = app.add_subcommand("list", "list built-in experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return list_presets();
    if (preset->parsed()) return run_preset(preset_name, engine, seed, out);
    return run_config(config_path);
  } catch (const mmshare::config::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mmshare::quad::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

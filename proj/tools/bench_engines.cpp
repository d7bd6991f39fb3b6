// Compares the serial reference path against the OpenMP one on the same
// workloads and checks the outputs are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "mmshare/coverage.hpp"
#include "mmshare/experiments.hpp"
#include "mmshare/mc.hpp"
#include "mmshare/parallel.hpp"
#include "mmshare/units.hpp"

using namespace mmshare;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

bool bit_identical(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t drops = 40000;
  int grid_points = 17;
  if (argc > 1) drops = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) grid_points = std::atoi(argv[2]);

  auto spec = experiments::make_preset("fig1");
  Scenario sc = make_system_preset(SystemPreset::Sys3, spec.base);

  std::vector<double> thresholds;
  for (int i = 0; i < grid_points; ++i) {
    thresholds.push_back(units::db_to_linear(-30.0 + 5.0 * i));
  }

  std::printf("threads available: %d\n\n", resolved_thread_count());

  {
    coverage::CoverageOptions serial{{}, ExecPolicy::Serial};
    coverage::CoverageOptions parallel{{}, ExecPolicy::Parallel};
    double t0 = now();
    auto a = coverage::sinr_coverage(sc, 0, thresholds, serial);
    double t1 = now();
    auto b = coverage::sinr_coverage(sc, 0, thresholds, parallel);
    double t2 = now();
    std::printf("analytical coverage grid (%d points)\n", grid_points);
    std::printf("  serial   %.3f s\n", t1 - t0);
    std::printf("  parallel %.3f s  (speedup %.2fx)\n", t2 - t1,
                (t1 - t0) / (t2 - t1));
    std::printf("  outputs bit-identical: %s\n\n",
                bit_identical(a.probabilities, b.probabilities) ? "yes" : "NO");
  }

  {
    mc::McConfig cfg;
    cfg.drops = drops;
    cfg.seed = 7;
    cfg.exec = ExecPolicy::Serial;
    double t0 = now();
    auto a = mc::estimate_sinr_ccdf(sc, cfg, 0, thresholds);
    double t1 = now();
    cfg.exec = ExecPolicy::Parallel;
    auto b = mc::estimate_sinr_ccdf(sc, cfg, 0, thresholds);
    double t2 = now();
    std::printf("monte carlo sinr ccdf (%llu drops)\n",
                static_cast<unsigned long long>(drops));
    std::printf("  serial   %.3f s\n", t1 - t0);
    std::printf("  parallel %.3f s  (speedup %.2fx)\n", t2 - t1,
                (t1 - t0) / (t2 - t1));
    std::printf("  outputs bit-identical: %s\n",
                bit_identical(a.probabilities, b.probabilities) ? "yes" : "NO");
  }
  return 0;
}

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <initializer_list>
#include <vector>

#include "mmshare/assoc.hpp"
#include "mmshare/coverage.hpp"
#include "mmshare/model.hpp"
#include "mmshare/quad.hpp"
#include "mmshare/units.hpp"
#include "scenarios.hpp"

using namespace mmshare;
using namespace mmshare::coverage;
using namespace mmshare::units;
using mmshare::quad::QuadSpec;

TEST_CASE("degenerate pooled network hits the closed form") {
  // Identical operators, both exponents 4, equal intercepts, no side lobe,
  // no noise: the full engine must collapse to the closed form and lose all
  // blockage dependence.
  for (int n : {1, 2}) {
    for (double beta : {0.004, 0.007}) {
      Scenario sc = testbed::degenerate_alpha4(n, beta, 10.0);
      for (double t_db : {-10.0, 0.0, 10.0, 25.0}) {
        double T = db_to_linear(t_db);
        double got = sinr_coverage_point(sc, 0, T);
        double want = coverage_closed_form_alpha4(n, deg_to_rad(10.0), T);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("blockage rate drops out of the degenerate case") {
  Scenario a = testbed::degenerate_alpha4(2, 0.002, 10.0);
  Scenario b = testbed::degenerate_alpha4(2, 0.020, 10.0);
  for (double t_db : {-5.0, 8.0, 20.0}) {
    double T = db_to_linear(t_db);
    CHECK(std::fabs(sinr_coverage_point(a, 0, T) -
                    sinr_coverage_point(b, 0, T)) < 1e-10);
  }
}

TEST_CASE("closed forms are consistent between sinr and rate scales") {
  for (int n : {1, 2, 3}) {
    for (double rho : {0.5, 2.0, 6.0}) {
      double via_sinr = coverage_closed_form_alpha4(
          n, deg_to_rad(10.0), std::pow(2.0, rho / n) - 1.0);
      CHECK(rate_ccdf_closed_form_alpha4(n, deg_to_rad(10.0), rho) ==
            doctest::Approx(via_sinr).epsilon(1e-12));
    }
  }
}

TEST_CASE("sharing crossover of the closed-form rate curves") {
  // Pooling doubles bandwidth but adds interference; the curves for one and
  // two pooled operators cross at a normalized rate near 3.31 and the
  // crossing point does not depend on the beamwidth.
  auto crossover = [](double theta_b) {
    return quad::find_root(
        [theta_b](double rho) {
          return rate_ccdf_closed_form_alpha4(2, theta_b, rho) -
                 rate_ccdf_closed_form_alpha4(1, theta_b, rho);
        },
        0.5, 15.0, 1e-10);
  };
  double at_pi = crossover(M_PI);
  double at_10 = crossover(deg_to_rad(10.0));
  CHECK(at_pi == doctest::Approx(3.313357).epsilon(1e-4));
  CHECK(std::fabs(at_pi - at_10) < 1e-6);
  CHECK(rate_ccdf_closed_form_alpha4(1, M_PI, at_pi) ==
        doctest::Approx(0.211335).epsilon(1e-4));
  CHECK(rate_ccdf_closed_form_alpha4(1, deg_to_rad(10.0), at_10) ==
        doctest::Approx(0.828278).epsilon(1e-4));
}

TEST_CASE("coverage at the urban reference point") {
  // Anchors computed with an independent implementation of the same model.
  struct Row {
    SystemPreset kind;
    double at_0db, at_10db;
  };
  for (auto row : {Row{SystemPreset::Sys1, 0.9457, 0.8174},
                   Row{SystemPreset::Sys2, 0.9467, 0.7606},
                   Row{SystemPreset::Sys3, 0.8302, 0.5426},
                   Row{SystemPreset::Sys4, 0.8803, 0.5998}}) {
    Scenario sc = testbed::urban_system(row.kind);
    CHECK(sinr_coverage_point(sc, 0, db_to_linear(0.0)) ==
          doctest::Approx(row.at_0db).epsilon(2e-4));
    CHECK(sinr_coverage_point(sc, 0, db_to_linear(10.0)) ==
          doctest::Approx(row.at_10db).epsilon(2e-4));
  }
}

TEST_CASE("median rates at the urban reference point") {
  struct Row {
    SystemPreset kind;
    double median_mbps;
  };
  QuadSpec spec;
  for (auto row : {Row{SystemPreset::Sys1, 64.99}, Row{SystemPreset::Sys2, 115.56},
                   Row{SystemPreset::Sys3, 79.78}, Row{SystemPreset::Sys4, 86.23}}) {
    Scenario sc = testbed::urban_system(row.kind);
    auto lm = assoc::compute_load_model(sc, spec);
    CHECK(lm.mean_load[0] == doctest::Approx(9.53333).epsilon(1e-4));
    CHECK(median_rate(sc, 0, lm, spec) / 1e6 ==
          doctest::Approx(row.median_mbps).epsilon(5e-4));
  }
}

TEST_CASE("sinr curves are valid ccdfs on the dB grid") {
  std::vector<double> th;
  for (double db = -30.0; db <= 50.0; db += 2.5) th.push_back(db_to_linear(db));
  for (auto kind : {SystemPreset::Sys1, SystemPreset::Sys2, SystemPreset::Sys3,
                    SystemPreset::Sys4}) {
    Scenario sc = testbed::urban_system(kind);
    auto curve = sinr_coverage(sc, 0, th);
    CHECK(curve.is_valid_ccdf());
  }
}

TEST_CASE("grid evaluation is bit-identical across execution policies") {
  std::vector<double> th;
  for (double db = -10.0; db <= 30.0; db += 5.0) th.push_back(db_to_linear(db));
  Scenario sc = testbed::urban_system(SystemPreset::Sys3);
  CoverageOptions serial, parallel;
  serial.exec = ExecPolicy::Serial;
  parallel.exec = ExecPolicy::Parallel;
  auto a = sinr_coverage(sc, 0, th, serial);
  auto b = sinr_coverage(sc, 0, th, parallel);
  REQUIRE(a.probabilities.size() == b.probabilities.size());
  CHECK(std::memcmp(a.probabilities.data(), b.probabilities.data(),
                    a.probabilities.size() * sizeof(double)) == 0);
}

TEST_CASE("partial loading never hurts coverage") {
  Scenario full = testbed::urban_system(SystemPreset::Sys3);
  Scenario part = full;
  part.partial_loading = true;
  for (auto& op : part.operators) op.user_density = per_km2_to_per_m2(30.0);
  std::vector<double> th = {db_to_linear(-5.0), db_to_linear(5.0),
                            db_to_linear(15.0)};
  auto a = sinr_coverage(full, 0, th);
  auto b = sinr_coverage(part, 0, th);
  for (size_t i = 0; i < th.size(); ++i) {
    CHECK(b.probabilities[i] > a.probabilities[i]);
  }
}

TEST_CASE("level solver inverts a known ccdf") {
  auto ccdf = [](double rho) { return std::pow(2.0, -rho); };
  CHECK(solve_ccdf_level(ccdf, 0.5, 1e-6, 3.0) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(solve_ccdf_level(ccdf, 0.25, 1e-6, 0.1) ==
        doctest::Approx(2.0).epsilon(1e-5));
  CHECK_THROWS_AS(
      solve_ccdf_level([](double) { return 1.0; }, 0.5, 1e-6, 1.0),
      quad::NoBracket);
}

TEST_CASE("extreme rate targets have zero coverage") {
  Scenario sc = testbed::urban_system(SystemPreset::Sys1);
  QuadSpec spec;
  auto lm = assoc::compute_load_model(sc, spec);
  CHECK(rate_coverage_point(sc, 0, 1e13, lm, spec) == 0.0);
}

TEST_CASE("required bandwidth reproduces the current allocation") {
  // Asking for the median the network already delivers at 100 MHz must
  // return 100 MHz.
  Scenario sc = testbed::urban_system(SystemPreset::Sys1);
  QuadSpec spec;
  auto lm = assoc::compute_load_model(sc, spec);
  double med = median_rate(sc, 0, lm, spec);
  double got = required_bandwidth(sc, 0, med, 20e6, 300e6, spec);
  CHECK(got / 1e6 == doctest::Approx(100.0).epsilon(2e-3));
}

TEST_CASE("percentiles bracket the median") {
  Scenario sc = testbed::urban_system(SystemPreset::Sys3);
  QuadSpec spec;
  auto lm = assoc::compute_load_model(sc, spec);
  double q25 = rate_percentile(sc, 0, lm, 0.25, spec);
  double q50 = rate_percentile(sc, 0, lm, 0.50, spec);
  double q75 = rate_percentile(sc, 0, lm, 0.75, spec);
  CHECK(q25 < q50);
  CHECK(q50 < q75);
  CHECK(q50 == doctest::Approx(median_rate(sc, 0, lm, spec)).epsilon(1e-6));
}

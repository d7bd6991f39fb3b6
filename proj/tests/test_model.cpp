#include "mmshare/model.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mmshare/units.hpp"

using namespace mmshare;

namespace {

PresetBase two_op_base() {
  using namespace units;
  OperatorParams op;
  op.bs_density = per_km2_to_per_m2(30.0);
  op.user_density = per_km2_to_per_m2(200.0);
  op.tx_power = dbm_to_watts(26.0);
  op.bandwidth = mhz_to_hz(100.0);
  PresetBase base;
  base.operators = {op, op};
  base.channel.gain_los = db_to_linear(-60.0);
  base.channel.gain_nlos = db_to_linear(-70.0);
  base.antenna.g_main = db_to_linear(18.0);
  base.antenna.g_side = db_to_linear(-2.0);
  base.antenna.half_beamwidth = deg_to_rad(10.0);
  base.antenna.theta_3db = deg_to_rad(20.0);
  base.blockage.beta = 0.007;
  return base;
}

}  // namespace

TEST_CASE("system presets wire access and sharing") {
  auto base = two_op_base();

  Scenario s1 = make_system_preset(SystemPreset::Sys1, base);
  CHECK(s1.access_sets == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(s1.sharing_groups == std::vector<std::vector<int>>{{0}, {1}});
  CHECK_FALSE(s1.colocated);
  CHECK(s1.pooled_bandwidth(0) == doctest::Approx(100e6));

  Scenario s2 = make_system_preset(SystemPreset::Sys2, base);
  CHECK(s2.access_sets == std::vector<std::vector<int>>{{0, 1}, {0, 1}});
  CHECK(s2.sharing_groups == std::vector<std::vector<int>>{{0, 1}});
  CHECK(s2.pooled_bandwidth(0) == doctest::Approx(200e6));

  Scenario s3 = make_system_preset(SystemPreset::Sys3, base);
  CHECK(s3.access_sets == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(s3.sharing_groups == std::vector<std::vector<int>>{{0, 1}});

  Scenario s4 = make_system_preset(SystemPreset::Sys4, base);
  CHECK(s4.colocated);
  CHECK(s4.access_sets == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(s4.sharing_groups == std::vector<std::vector<int>>{{0, 1}});

  for (const Scenario* sc : {&s1, &s2, &s3, &s4}) {
    CHECK(validate(*sc).empty());
  }
}

TEST_CASE("colocated preset rejects unequal densities") {
  auto base = two_op_base();
  base.operators[1].bs_density *= 2.0;
  CHECK_THROWS_AS(make_system_preset(SystemPreset::Sys4, base),
                  std::invalid_argument);
  // the other presets accept asymmetric densities
  CHECK(validate(make_system_preset(SystemPreset::Sys3, base)).empty());
}

TEST_CASE("validate flags broken scenarios") {
  auto base = two_op_base();
  Scenario sc = make_system_preset(SystemPreset::Sys2, base);

  SUBCASE("negative density") {
    sc.operators[0].bs_density = -1.0;
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("nlos exponent at the divergence boundary") {
    sc.channel.alpha_nlos = 2.0;
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("empty access set") {
    sc.access_sets[0] = {};
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("access set out of range") {
    sc.access_sets[0] = {0, 5};
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("sharing groups must partition") {
    sc.sharing_groups = {{0, 1}, {1}};
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("operator missing from every group") {
    sc.sharing_groups = {{0}};
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("side gain above main gain") {
    sc.antenna.g_side = 2.0 * sc.antenna.g_main;
    CHECK_FALSE(validate(sc).empty());
  }
  SUBCASE("colocated with unequal densities") {
    sc.colocated = true;
    sc.operators[1].bs_density *= 3.0;
    CHECK_FALSE(validate(sc).empty());
  }
}

TEST_CASE("ccdf validity checks ordering and monotonicity") {
  DistributionCurve c;
  c.thresholds = {1.0, 2.0, 3.0};
  c.probabilities = {0.9, 0.5, 0.2};
  CHECK(c.is_valid_ccdf());

  SUBCASE("increasing probability fails") {
    c.probabilities = {0.5, 0.9, 0.2};
    CHECK_FALSE(c.is_valid_ccdf());
  }
  SUBCASE("unsorted thresholds fail") {
    c.thresholds = {1.0, 3.0, 2.0};
    CHECK_FALSE(c.is_valid_ccdf());
  }
  SUBCASE("probability above one fails") {
    c.probabilities = {1.2, 0.5, 0.2};
    CHECK_FALSE(c.is_valid_ccdf());
  }
  SUBCASE("mismatched stderr length fails") {
    c.stderrs = {0.01};
    CHECK_FALSE(c.is_valid_ccdf());
  }
}

TEST_CASE("flat top antenna gain switches at the half beamwidth") {
  auto base = two_op_base();
  const auto& a = base.antenna;
  CHECK(antenna_gain(a, 0.0) == doctest::Approx(a.g_main));
  CHECK(antenna_gain(a, 0.99 * a.half_beamwidth) == doctest::Approx(a.g_main));
  CHECK(antenna_gain(a, 1.01 * a.half_beamwidth) == doctest::Approx(a.g_side));
  CHECK(antenna_gain(a, -0.5 * a.half_beamwidth) == doctest::Approx(a.g_main));
  CHECK(antenna_gain(a, M_PI) == doctest::Approx(a.g_side));
}

TEST_CASE("parabolic antenna gain rolls off quadratically and saturates") {
  auto base = two_op_base();
  AntennaPattern a = base.antenna;
  a.kind = AntennaKind::Parabolic;
  CHECK(antenna_gain(a, 0.0) == doctest::Approx(a.g_main));
  // 12 dB down at theta_3db by construction of the quadratic law
  CHECK(antenna_gain(a, a.theta_3db) ==
        doctest::Approx(a.g_main * std::pow(10.0, -1.2)));
  double floor = a.g_main * std::pow(10.0, -a.max_attenuation_db / 10.0);
  CHECK(antenna_gain(a, M_PI) == doctest::Approx(floor));
  CHECK(antenna_gain(a, 0.35) == doctest::Approx(antenna_gain(a, -0.35)));
}

TEST_CASE("sharing group lookup") {
  auto base = two_op_base();
  Scenario sc = make_system_preset(SystemPreset::Sys1, base);
  CHECK(sc.sharing_group_of(1) == std::vector<int>{1});
  CHECK(sc.can_access(0, 0));
  CHECK_FALSE(sc.can_access(0, 1));
}

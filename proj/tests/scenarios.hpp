#pragma once

// Urban mmWave parameter set shared across tests: two identical operators,
// 28 GHz propagation split into LOS/NLOS tiers, flat-top beams.

#include "mmshare/model.hpp"
#include "mmshare/units.hpp"

namespace testbed {

inline mmshare::PresetBase urban_base(int ops = 2) {
  using namespace mmshare::units;
  mmshare::OperatorParams op;
  op.bs_density = per_km2_to_per_m2(30.0);
  op.user_density = per_km2_to_per_m2(200.0);
  op.tx_power = dbm_to_watts(26.0);
  op.bandwidth = mhz_to_hz(100.0);

  mmshare::PresetBase base;
  base.operators.assign(ops, op);
  base.channel.alpha_los = 2.0;
  base.channel.alpha_nlos = 4.0;
  base.channel.gain_los = db_to_linear(-60.0);
  base.channel.gain_nlos = db_to_linear(-70.0);
  base.channel.carrier_ghz = 28.0;
  base.channel.noise_density = dbm_to_watts(-164.0);
  base.antenna.g_main = db_to_linear(18.0);
  base.antenna.g_side = db_to_linear(-2.0);
  base.antenna.half_beamwidth = deg_to_rad(10.0);
  base.antenna.theta_3db = deg_to_rad(20.0);
  base.antenna.max_attenuation_db = 20.0;
  base.blockage.beta = 0.007;
  return base;
}

inline mmshare::Scenario urban_system(mmshare::SystemPreset kind, int ops = 2) {
  return mmshare::make_system_preset(kind, urban_base(ops));
}

// The special configuration whose coverage collapses to a closed form:
// identical operators with full pooling and closed access, both exponents 4,
// equal intercepts, no side lobe, no noise.
inline mmshare::Scenario degenerate_alpha4(int ops, double beta = 0.007,
                                           double theta_b_deg = 10.0) {
  using namespace mmshare::units;
  mmshare::PresetBase base = urban_base(ops);
  base.channel.alpha_los = 4.0;
  base.channel.alpha_nlos = 4.0;
  base.channel.gain_los = db_to_linear(-60.0);
  base.channel.gain_nlos = db_to_linear(-60.0);
  base.channel.noise_density = 0.0;
  base.antenna.g_side = 0.0;
  base.antenna.half_beamwidth = deg_to_rad(theta_b_deg);
  base.antenna.theta_3db = 2.0 * base.antenna.half_beamwidth;
  base.blockage.beta = beta;
  return mmshare::make_system_preset(mmshare::SystemPreset::Sys3, base);
}

}  // namespace testbed

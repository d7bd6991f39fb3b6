#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mmshare {

enum class LinkType { Los, Nlos };

inline constexpr std::array<LinkType, 2> kLinkTypes = {LinkType::Los,
                                                       LinkType::Nlos};

inline constexpr LinkType other_link(LinkType s) {
  return s == LinkType::Los ? LinkType::Nlos : LinkType::Los;
}

inline const char* link_name(LinkType s) {
  return s == LinkType::Los ? "los" : "nlos";
}

// One (operator, propagation state) pair; the BS process of operator `op`
// splits into a LOS and an NLOS tier around the typical user.
struct TierRef {
  int op;
  LinkType link;
};

struct OperatorParams {
  double bs_density = 0.0;    // BS per m^2
  double user_density = 0.0;  // users per m^2
  double tx_power = 0.0;      // watts
  double bandwidth = 0.0;     // licensed spectrum, Hz
};

struct ChannelParams {
  double alpha_los = 2.0;
  double alpha_nlos = 4.0;
  double gain_los = 1e-6;       // linear pathloss intercept at 1 m
  double gain_nlos = 1e-7;
  double carrier_ghz = 28.0;    // metadata only; propagation is set by the above
  double noise_density = 0.0;   // noise PSD at the receiver, W/Hz; 0 disables noise

  double alpha(LinkType s) const {
    return s == LinkType::Los ? alpha_los : alpha_nlos;
  }
  double gain(LinkType s) const {
    return s == LinkType::Los ? gain_los : gain_nlos;
  }
};

enum class AntennaKind { FlatTop, Parabolic };

// Sectorized transmit beam. The flat-top pattern (main gain inside the
// half-beamwidth, side gain outside) is what the analytical engine assumes;
// the parabolic pattern (3GPP-style quadratic rolloff, capped attenuation)
// is available to the Monte Carlo engine only.
struct AntennaPattern {
  double g_main = 1.0;              // linear
  double g_side = 1.0;              // linear
  double half_beamwidth = 0.0;      // radians
  AntennaKind kind = AntennaKind::FlatTop;
  double theta_3db = 0.0;           // parabolic only; radians
  double max_attenuation_db = 20.0; // parabolic only
};

struct BlockageModel {
  double beta = 0.0;  // 1/m; LOS probability at range x is exp(-beta x)
};

// Transmit gain toward an angular offset theta (radians) from boresight.
double antenna_gain(const AntennaPattern& a, double theta);

struct Violation {
  std::string field;
  std::string message;
};

// Full system description. Access sets S_n list which operators' BSs the
// users of operator n may connect to; sharing groups partition operators
// into spectrum pools (every member of a group licenses its band to every
// other member).
struct Scenario {
  std::vector<OperatorParams> operators;
  ChannelParams channel;
  AntennaPattern antenna;
  BlockageModel blockage;
  std::vector<std::vector<int>> access_sets;     // per operator, sorted
  std::vector<std::vector<int>> sharing_groups;  // partition of operators
  bool colocated = false;
  bool partial_loading = false;

  int num_operators() const { return static_cast<int>(operators.size()); }

  const std::vector<int>& access_set(int n) const { return access_sets[n]; }

  bool can_access(int n, int m) const;

  // Sharing group containing operator k (the pool whose spectrum k's BSs
  // radiate in, hence the set of interfering operators).
  const std::vector<int>& sharing_group_of(int k) const;

  // Pooled bandwidth available to a user served by operator k.
  double pooled_bandwidth(int k) const;
};

std::vector<Violation> validate(const Scenario& s);

// The four canonical two-or-more-operator configurations:
//   Sys1: exclusive licenses, closed access (baseline).
//   Sys2: full spectrum pooling, closed access.
//   Sys3: full spectrum pooling, open access.
//   Sys4: pooled spectrum with co-located sites, closed access.
enum class SystemPreset { Sys1, Sys2, Sys3, Sys4 };

struct PresetBase {
  std::vector<OperatorParams> operators;
  ChannelParams channel;
  AntennaPattern antenna;
  BlockageModel blockage;
};

Scenario make_system_preset(SystemPreset kind, const PresetBase& base);

const char* system_preset_name(SystemPreset kind);

// A CCDF sampled on an ascending threshold grid. stderrs is empty for
// analytical curves and per-point one-sigma for Monte Carlo ones.
struct DistributionCurve {
  std::vector<double> thresholds;
  std::vector<double> probabilities;
  std::vector<double> stderrs;

  bool is_valid_ccdf(double tol = 1e-9) const;
};

}  // namespace mmshare

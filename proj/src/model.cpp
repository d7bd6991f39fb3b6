#include "mmshare/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmshare {

double antenna_gain(const AntennaPattern& a, double theta) {
  theta = std::fabs(theta);
  if (a.kind == AntennaKind::FlatTop) {
    return theta <= a.half_beamwidth ? a.g_main : a.g_side;
  }
  double rel = theta / a.theta_3db;
  double att_db = std::min(12.0 * rel * rel, a.max_attenuation_db);
  return a.g_main * std::pow(10.0, -att_db / 10.0);
}

bool Scenario::can_access(int n, int m) const {
  const auto& s = access_sets[n];
  return std::find(s.begin(), s.end(), m) != s.end();
}

const std::vector<int>& Scenario::sharing_group_of(int k) const {
  for (const auto& g : sharing_groups) {
    if (std::find(g.begin(), g.end(), k) != g.end()) return g;
  }
  throw std::out_of_range("operator " + std::to_string(k) +
                          " is in no sharing group");
}

double Scenario::pooled_bandwidth(int k) const {
  double w = 0.0;
  for (int m : sharing_group_of(k)) w += operators[m].bandwidth;
  return w;
}

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> v;
  const int M = s.num_operators();
  if (M == 0) {
    v.push_back({"operators", "at least one operator required"});
    return v;
  }
  for (int m = 0; m < M; ++m) {
    const auto& op = s.operators[m];
    auto field = [m](const char* f) {
      return "operator." + std::to_string(m + 1) + "." + f;
    };
    if (!(op.bs_density > 0.0))
      v.push_back({field("bs_density"), "BS density must be positive"});
    if (op.user_density < 0.0)
      v.push_back({field("user_density"), "user density must be non-negative"});
    if (!(op.tx_power > 0.0))
      v.push_back({field("tx_power"), "transmit power must be positive"});
    if (!(op.bandwidth > 0.0))
      v.push_back({field("bandwidth"), "licensed bandwidth must be positive"});
  }
  if (!(s.channel.alpha_los > 0.0))
    v.push_back({"channel.alpha_los", "LOS pathloss exponent must be positive"});
  if (!(s.channel.alpha_nlos > 2.0))
    v.push_back({"channel.alpha_nlos",
                 "NLOS pathloss exponent must exceed 2 (interference from the "
                 "far field diverges otherwise)"});
  if (!(s.channel.gain_los > 0.0))
    v.push_back({"channel.gain_los", "LOS intercept must be positive"});
  if (!(s.channel.gain_nlos > 0.0))
    v.push_back({"channel.gain_nlos", "NLOS intercept must be positive"});
  if (s.channel.noise_density < 0.0)
    v.push_back({"channel.noise_density", "noise density must be non-negative"});
  if (!(s.blockage.beta > 0.0))
    v.push_back({"blockage.beta", "blockage rate must be positive"});
  if (!(s.antenna.g_main > 0.0) || !(s.antenna.g_side >= 0.0))
    v.push_back(
        {"antenna", "main gain must be positive, side gain non-negative"});
  if (s.antenna.g_side > s.antenna.g_main)
    v.push_back({"antenna", "side gain must not exceed main gain"});
  if (!(s.antenna.half_beamwidth > 0.0) || s.antenna.half_beamwidth > M_PI)
    v.push_back({"antenna.half_beamwidth", "half beamwidth must be in (0, pi]"});
  if (s.antenna.kind == AntennaKind::Parabolic && !(s.antenna.theta_3db > 0.0))
    v.push_back({"antenna.theta_3db", "parabolic pattern needs theta_3db > 0"});

  if (static_cast<int>(s.access_sets.size()) != M) {
    v.push_back({"access", "need one access set per operator"});
    return v;
  }
  for (int n = 0; n < M; ++n) {
    const auto& a = s.access_sets[n];
    if (a.empty())
      v.push_back({"access." + std::to_string(n + 1), "access set is empty"});
    if (!std::is_sorted(a.begin(), a.end()) ||
        std::adjacent_find(a.begin(), a.end()) != a.end())
      v.push_back({"access." + std::to_string(n + 1),
                   "access set must be sorted and duplicate-free"});
    for (int m : a) {
      if (m < 0 || m >= M)
        v.push_back({"access." + std::to_string(n + 1),
                     "access set references unknown operator " +
                         std::to_string(m + 1)});
    }
  }

  std::vector<int> seen(M, 0);
  for (const auto& g : s.sharing_groups) {
    for (int m : g) {
      if (m < 0 || m >= M) {
        v.push_back({"sharing_group",
                     "group references unknown operator " + std::to_string(m + 1)});
      } else {
        seen[m] += 1;
      }
    }
  }
  for (int m = 0; m < M; ++m) {
    if (seen[m] != 1)
      v.push_back({"sharing_group",
                   "operator " + std::to_string(m + 1) +
                       " must appear in exactly one sharing group (appears " +
                       std::to_string(seen[m]) + " times)"});
  }

  if (s.colocated) {
    for (int m = 1; m < M; ++m) {
      if (s.operators[m].bs_density != s.operators[0].bs_density) {
        v.push_back({"colocated",
                     "co-located deployment requires equal BS densities "
                     "(sites are shared one-to-one across operators)"});
        break;
      }
    }
  }
  return v;
}

Scenario make_system_preset(SystemPreset kind, const PresetBase& base) {
  const int M = static_cast<int>(base.operators.size());
  if (M < 1) throw std::invalid_argument("preset needs at least one operator");

  Scenario s;
  s.operators = base.operators;
  s.channel = base.channel;
  s.antenna = base.antenna;
  s.blockage = base.blockage;

  std::vector<int> all(M);
  for (int m = 0; m < M; ++m) all[m] = m;

  auto own_only = [&] {
    s.access_sets.clear();
    for (int m = 0; m < M; ++m) s.access_sets.push_back({m});
  };
  auto singleton_groups = [&] {
    s.sharing_groups.clear();
    for (int m = 0; m < M; ++m) s.sharing_groups.push_back({m});
  };

  switch (kind) {
    case SystemPreset::Sys1:
      own_only();
      singleton_groups();
      break;
    case SystemPreset::Sys2:
      s.access_sets.assign(M, all);
      s.sharing_groups = {all};
      break;
    case SystemPreset::Sys3:
      own_only();
      s.sharing_groups = {all};
      break;
    case SystemPreset::Sys4:
      for (int m = 1; m < M; ++m) {
        if (base.operators[m].bs_density != base.operators[0].bs_density) {
          throw std::invalid_argument(
              "co-located preset requires equal BS densities across operators");
        }
      }
      own_only();
      s.sharing_groups = {all};
      s.colocated = true;
      break;
  }
  return s;
}

const char* system_preset_name(SystemPreset kind) {
  switch (kind) {
    case SystemPreset::Sys1: return "sys1";
    case SystemPreset::Sys2: return "sys2";
    case SystemPreset::Sys3: return "sys3";
    case SystemPreset::Sys4: return "sys4";
  }
  return "?";
}

bool DistributionCurve::is_valid_ccdf(double tol) const {
  if (thresholds.size() != probabilities.size()) return false;
  if (!stderrs.empty() && stderrs.size() != probabilities.size()) return false;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double p = probabilities[i];
    if (!(p >= -tol && p <= 1.0 + tol)) return false;
    if (i > 0) {
      if (!(thresholds[i] > thresholds[i - 1])) return false;
      if (p > probabilities[i - 1] + tol) return false;
    }
  }
  return true;
}

}  // namespace mmshare

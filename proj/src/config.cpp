#include "mmshare/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mmshare/units.hpp"

namespace mmshare::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string ConfigError::format(const std::string& msg, int line,
                                const std::string& key) {
  std::string out = "config error";
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  if (!key.empty()) out += " [" + key + "]";
  return out + ": " + msg;
}

KeyValues KeyValues::parse_text(const std::string& text,
                                const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", lineno);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (value.empty()) throw ConfigError("empty value", lineno, key);
    auto [it, inserted] = kv.entries_.emplace(key, Entry{value, lineno, false});
    if (!inserted) {
      throw ConfigError("duplicate key (first set on line " +
                            std::to_string(it->second.line) + ")",
                        lineno, key);
    }
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

const Entry& KeyValues::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key", 0, key);
  it->second.used = true;
  return it->second;
}

bool KeyValues::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string KeyValues::get_string(const std::string& key) const {
  return entry(key).value;
}

double KeyValues::get_double(const std::string& key) const {
  const Entry& e = entry(key);
  const char* s = e.value.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') {
    throw ConfigError("expected a number, got '" + e.value + "'", e.line, key);
  }
  return v;
}

int KeyValues::get_int(const std::string& key) const {
  const Entry& e = entry(key);
  const char* s = e.value.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0') {
    throw ConfigError("expected an integer, got '" + e.value + "'", e.line, key);
  }
  return static_cast<int>(v);
}

bool KeyValues::get_bool(const std::string& key) const {
  const Entry& e = entry(key);
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError("expected true/false, got '" + e.value + "'", e.line, key);
}

std::vector<int> KeyValues::get_int_list(const std::string& key) const {
  const Entry& e = entry(key);
  std::istringstream in(e.value);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    const char* s = tok.c_str();
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') {
      throw ConfigError("expected integers, got '" + tok + "'", e.line, key);
    }
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("empty list", e.line, key);
  return out;
}

std::string KeyValues::get_string_or(const std::string& key,
                                     const std::string& d) const {
  return has(key) ? get_string(key) : d;
}
double KeyValues::get_double_or(const std::string& key, double d) const {
  return has(key) ? get_double(key) : d;
}
int KeyValues::get_int_or(const std::string& key, int d) const {
  return has(key) ? get_int(key) : d;
}
bool KeyValues::get_bool_or(const std::string& key, bool d) const {
  return has(key) ? get_bool(key) : d;
}

std::vector<std::string> KeyValues::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) {
    if (!e.used) out.push_back(k);
  }
  return out;
}

std::vector<std::string> KeyValues::keys_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) {
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  }
  return out;
}

Scenario parse_scenario(const KeyValues& kv, const std::string& prefix) {
  using namespace units;
  auto P = [&prefix](const std::string& k) { return prefix + k; };

  Scenario sc;
  int M = kv.get_int(P("operators"));
  if (M < 1) throw ConfigError("need at least one operator", 0, P("operators"));
  for (int m = 1; m <= M; ++m) {
    std::string op = P("operator." + std::to_string(m) + ".");
    OperatorParams o;
    o.bs_density = per_km2_to_per_m2(kv.get_double(op + "bs_density_per_km2"));
    o.user_density =
        per_km2_to_per_m2(kv.get_double(op + "user_density_per_km2"));
    o.tx_power = dbm_to_watts(kv.get_double(op + "tx_power_dbm"));
    o.bandwidth = mhz_to_hz(kv.get_double(op + "bandwidth_mhz"));
    sc.operators.push_back(o);
  }

  sc.channel.alpha_los = kv.get_double(P("channel.alpha_los"));
  sc.channel.alpha_nlos = kv.get_double(P("channel.alpha_nlos"));
  sc.channel.gain_los = db_to_linear(kv.get_double(P("channel.intercept_los_db")));
  sc.channel.gain_nlos =
      db_to_linear(kv.get_double(P("channel.intercept_nlos_db")));
  sc.channel.carrier_ghz = kv.get_double_or(P("channel.carrier_ghz"), 28.0);
  if (kv.get_bool_or(P("channel.noise_free"), false)) {
    sc.channel.noise_density = 0.0;
  } else {
    double psd_dbm = kv.get_double_or(P("channel.noise_density_dbm_hz"), -174.0);
    double nf_db = kv.get_double_or(P("channel.noise_figure_db"), 10.0);
    sc.channel.noise_density = dbm_to_watts(psd_dbm + nf_db);
  }

  sc.antenna.g_main = db_to_linear(kv.get_double_or(P("antenna.main_gain_db"), 18.0));
  sc.antenna.g_side = db_to_linear(kv.get_double_or(P("antenna.side_gain_db"), -2.0));
  sc.antenna.half_beamwidth =
      deg_to_rad(kv.get_double(P("antenna.half_beamwidth_deg")));
  std::string pattern = kv.get_string_or(P("antenna.pattern"), "flat_top");
  if (pattern == "flat_top") {
    sc.antenna.kind = AntennaKind::FlatTop;
  } else if (pattern == "parabolic") {
    sc.antenna.kind = AntennaKind::Parabolic;
  } else {
    throw ConfigError("unknown antenna pattern '" + pattern + "'", 0,
                      P("antenna.pattern"));
  }
  sc.antenna.theta_3db = deg_to_rad(kv.get_double_or(
      P("antenna.theta_3db_deg"), 2.0 * rad_to_deg(sc.antenna.half_beamwidth)));
  sc.antenna.max_attenuation_db =
      kv.get_double_or(P("antenna.max_attenuation_db"), 20.0);

  sc.blockage.beta = kv.get_double(P("blockage.beta_per_m"));

  auto read_index_list = [&](const std::string& key) {
    std::vector<int> raw = kv.get_int_list(key);
    for (int& v : raw) {
      if (v < 1 || v > M) {
        throw ConfigError("operator index " + std::to_string(v) +
                              " out of range 1.." + std::to_string(M),
                          0, key);
      }
      v -= 1;
    }
    return raw;
  };

  bool any_access = !kv.keys_with_prefix(P("access.")).empty();
  for (int n = 1; n <= M; ++n) {
    std::string key = P("access." + std::to_string(n));
    if (any_access) {
      sc.access_sets.push_back(read_index_list(key));
    } else {
      sc.access_sets.push_back({n - 1});
    }
  }
  auto group_keys = kv.keys_with_prefix(P("sharing_group."));
  if (group_keys.empty()) {
    for (int m = 0; m < M; ++m) sc.sharing_groups.push_back({m});
  } else {
    for (std::size_t g = 1; g <= group_keys.size(); ++g) {
      sc.sharing_groups.push_back(
          read_index_list(P("sharing_group." + std::to_string(g))));
    }
  }

  sc.colocated = kv.get_bool_or(P("colocated"), false);
  sc.partial_loading = kv.get_bool_or(P("partial_loading"), false);

  auto violations = validate(sc);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) {
      msg += "\n  " + v.field + ": " + v.message;
    }
    throw ConfigError(msg);
  }
  return sc;
}

std::string serialize_scenario(const Scenario& sc, const std::string& prefix) {
  using namespace units;
  std::ostringstream os;
  auto put = [&](const std::string& k, const std::string& v) {
    os << prefix << k << " = " << v << "\n";
  };
  put("operators", std::to_string(sc.num_operators()));
  for (int m = 0; m < sc.num_operators(); ++m) {
    const auto& o = sc.operators[m];
    std::string op = "operator." + std::to_string(m + 1) + ".";
    put(op + "bs_density_per_km2", fmt_double(per_m2_to_per_km2(o.bs_density)));
    put(op + "user_density_per_km2",
        fmt_double(per_m2_to_per_km2(o.user_density)));
    put(op + "tx_power_dbm", fmt_double(watts_to_dbm(o.tx_power)));
    put(op + "bandwidth_mhz", fmt_double(hz_to_mhz(o.bandwidth)));
  }
  put("channel.alpha_los", fmt_double(sc.channel.alpha_los));
  put("channel.alpha_nlos", fmt_double(sc.channel.alpha_nlos));
  put("channel.intercept_los_db", fmt_double(linear_to_db(sc.channel.gain_los)));
  put("channel.intercept_nlos_db",
      fmt_double(linear_to_db(sc.channel.gain_nlos)));
  put("channel.carrier_ghz", fmt_double(sc.channel.carrier_ghz));
  if (sc.channel.noise_density == 0.0) {
    put("channel.noise_free", "true");
  } else {
    put("channel.noise_density_dbm_hz",
        fmt_double(watts_to_dbm(sc.channel.noise_density)));
    put("channel.noise_figure_db", "0");
  }
  put("antenna.main_gain_db", fmt_double(linear_to_db(sc.antenna.g_main)));
  put("antenna.side_gain_db", fmt_double(linear_to_db(sc.antenna.g_side)));
  put("antenna.half_beamwidth_deg",
      fmt_double(rad_to_deg(sc.antenna.half_beamwidth)));
  put("antenna.pattern",
      sc.antenna.kind == AntennaKind::FlatTop ? "flat_top" : "parabolic");
  put("antenna.theta_3db_deg", fmt_double(rad_to_deg(sc.antenna.theta_3db)));
  put("antenna.max_attenuation_db", fmt_double(sc.antenna.max_attenuation_db));
  put("blockage.beta_per_m", fmt_double(sc.blockage.beta));
  for (int n = 0; n < sc.num_operators(); ++n) {
    std::string v;
    for (int m : sc.access_sets[n]) {
      if (!v.empty()) v += " ";
      v += std::to_string(m + 1);
    }
    put("access." + std::to_string(n + 1), v);
  }
  for (std::size_t g = 0; g < sc.sharing_groups.size(); ++g) {
    std::string v;
    for (int m : sc.sharing_groups[g]) {
      if (!v.empty()) v += " ";
      v += std::to_string(m + 1);
    }
    put("sharing_group." + std::to_string(g + 1), v);
  }
  put("colocated", sc.colocated ? "true" : "false");
  put("partial_loading", sc.partial_loading ? "true" : "false");
  return os.str();
}

mc::McConfig parse_mc(const KeyValues& kv, const std::string& prefix) {
  auto P = [&prefix](const std::string& k) { return prefix + "mc." + k; };
  mc::McConfig cfg;
  long drops = kv.get_int_or(P("drops"), 100000);
  if (drops < 1) throw ConfigError("drops must be positive", 0, P("drops"));
  cfg.drops = static_cast<std::uint64_t>(drops);
  cfg.seed = static_cast<std::uint64_t>(kv.get_int_or(P("seed"), 1));
  cfg.region_radius = kv.get_double_or(P("region_radius_m"), 0.0);
  std::string dep = kv.get_string_or(P("deployment"), "independent_ppp");
  if (dep == "independent_ppp") {
    cfg.deployment = mc::Deployment::IndependentPpp;
  } else if (dep == "colocated") {
    cfg.deployment = mc::Deployment::Colocated;
  } else if (dep == "shifted_grid") {
    cfg.deployment = mc::Deployment::ShiftedGrid;
  } else {
    throw ConfigError("unknown deployment '" + dep + "'", 0, P("deployment"));
  }
  std::string fading = kv.get_string_or(P("fading"), "rayleigh");
  if (fading == "rayleigh") {
    cfg.fading.kind = mc::FadingSpec::Kind::Rayleigh;
  } else if (fading == "nakagami") {
    cfg.fading.kind = mc::FadingSpec::Kind::Nakagami;
  } else {
    throw ConfigError("unknown fading '" + fading + "'", 0, P("fading"));
  }
  cfg.fading.nakagami_m = kv.get_double_or(P("nakagami_m"), 10.0);
  cfg.shadowing.enabled = kv.get_bool_or(P("shadowing"), false);
  cfg.shadowing.sigma_los_db =
      kv.get_double_or(P("shadowing_sigma_los_db"), 5.2);
  cfg.shadowing.sigma_nlos_db =
      kv.get_double_or(P("shadowing_sigma_nlos_db"), 7.6);
  return cfg;
}

std::string serialize_mc(const mc::McConfig& cfg, const std::string& prefix) {
  std::ostringstream os;
  auto put = [&](const std::string& k, const std::string& v) {
    os << prefix << "mc." << k << " = " << v << "\n";
  };
  put("drops", std::to_string(cfg.drops));
  put("seed", std::to_string(cfg.seed));
  put("region_radius_m", fmt_double(cfg.region_radius));
  const char* dep = "independent_ppp";
  if (cfg.deployment == mc::Deployment::Colocated) dep = "colocated";
  if (cfg.deployment == mc::Deployment::ShiftedGrid) dep = "shifted_grid";
  put("deployment", dep);
  put("fading", cfg.fading.kind == mc::FadingSpec::Kind::Rayleigh ? "rayleigh"
                                                                  : "nakagami");
  put("nakagami_m", fmt_double(cfg.fading.nakagami_m));
  put("shadowing", cfg.shadowing.enabled ? "true" : "false");
  put("shadowing_sigma_los_db", fmt_double(cfg.shadowing.sigma_los_db));
  put("shadowing_sigma_nlos_db", fmt_double(cfg.shadowing.sigma_nlos_db));
  return os.str();
}

}  // namespace mmshare::config

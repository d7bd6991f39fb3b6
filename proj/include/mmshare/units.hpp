#pragma once

#include <cmath>

// Unit conversions at the configuration boundary. Everything past the
// boundary is SI linear: watts, meters, hertz, radians, linear gains.

namespace mmshare::units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

inline double watts_to_dbm(double w) { return linear_to_db(w * 1e3); }

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

inline double rad_to_deg(double rad) { return rad * 180.0 / M_PI; }

inline double per_km2_to_per_m2(double d) { return d * 1e-6; }

inline double per_m2_to_per_km2(double d) { return d * 1e6; }

inline double mhz_to_hz(double mhz) { return mhz * 1e6; }

inline double hz_to_mhz(double hz) { return hz * 1e-6; }

}  // namespace mmshare::units

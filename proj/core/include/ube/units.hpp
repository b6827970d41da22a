#pragma once

#include <cmath>
#include <numbers>

// Boundary conversions. Everything past the config parser is SI and linear.
namespace ube::units {

inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Areal densities: per square kilometre to per square metre.
constexpr double per_km2_to_per_m2(double v) { return v * 1e-6; }
constexpr double per_m2_to_per_km2(double v) { return v * 1e6; }

constexpr double mhz_to_hz(double v) { return v * 1e6; }
constexpr double ghz_to_hz(double v) { return v * 1e9; }

}  // namespace ube::units

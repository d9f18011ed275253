#pragma once

#include <cmath>
#include <cstdint>

namespace vric {

// SM wire units: centimeters for lengths, cm/s for speeds, radians*100
// ("centiradians") for angles, microseconds for timestamps. All conversions
// from SI floats round half away from zero, so a quantized value sits within
// 0.5 cm (resp. 0.005 rad) of its source. Positions live in meters everywhere
// outside the SM structs; these helpers are the only crossing point.

[[nodiscard]] inline std::int32_t meters_to_cm(double m) {
  return static_cast<std::int32_t>(std::llround(m * 100.0));
}

[[nodiscard]] inline std::int32_t mps_to_cmps(double mps) {
  return static_cast<std::int32_t>(std::llround(mps * 100.0));
}

[[nodiscard]] inline std::int32_t rad_to_centirad(double rad) {
  return static_cast<std::int32_t>(std::llround(rad * 100.0));
}

[[nodiscard]] inline double cm_to_meters(std::int32_t cm) { return cm / 100.0; }

[[nodiscard]] inline double cmps_to_mps(std::int32_t cmps) { return cmps / 100.0; }

[[nodiscard]] inline double centirad_to_rad(std::int32_t centirad) {
  return centirad / 100.0;
}

[[nodiscard]] inline std::int64_t seconds_to_us(double s) {
  return std::llround(s * 1e6);
}

[[nodiscard]] inline double us_to_seconds(std::int64_t us) { return us / 1e6; }

}  // namespace vric

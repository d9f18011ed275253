#pragma once

#include <cmath>

#include "vric/geom.hpp"
#include "vric/twin/scenario.hpp"

namespace vric::percept {

// Pinhole camera with a boresight given as (theta, phi) in the global frame
// (elevation from horizontal, azimuth CCW from +x), zero roll. The camera
// frame has +x along the boresight, +y left, +z up.
struct CameraModel {
  std::int16_t id = 0;
  Vec3 position;
  double theta = 0.0;
  double phi = 0.0;
  double fov_h = 1.5;
  double fov_v = 1.0;
  int image_w = 640;
  int image_h = 480;
  double focal_px = 0.0;  // image_w / (2 tan(fov_h/2))
  double range_max = 15.0;
  double frame_period_s = 1.0 / 12.0;
};

[[nodiscard]] CameraModel make_camera(const twin::CameraSpec& spec, double fps);

// Global -> camera-frame and back (inverse rotations of each other).
[[nodiscard]] Vec3 world_to_camera(const CameraModel& cam, const Vec3& p);
[[nodiscard]] Vec3 camera_to_world(const CameraModel& cam, const Vec3& v_cam);

// (r, theta, phi) of a camera-frame vector; theta in [-pi/2, pi/2], phi in
// (-pi, pi].
struct Polar {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

[[nodiscard]] inline Polar to_polar(const Vec3& v) {
  Polar p;
  p.r = v.norm();
  if (p.r == 0.0) {
    return p;
  }
  p.theta = std::asin(v.z / p.r);
  p.phi = std::atan2(v.y, v.x);
  return p;
}

[[nodiscard]] inline Vec3 from_polar(double r, double theta, double phi) {
  return {r * std::cos(theta) * std::cos(phi),
          r * std::cos(theta) * std::sin(phi), r * std::sin(theta)};
}

[[nodiscard]] bool in_frustum(const CameraModel& cam, const Vec3& v_cam);

}  // namespace vric::percept

#pragma once

#include <stdexcept>

#include "vric/geom.hpp"
#include "vric/sm/messages.hpp"

namespace vric::xapp {

struct StaleCameraPose : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// p = cam_position + R(boresight) * r*(cos t cos p, cos t sin p, sin t).
// Pure double-precision core, shared by geometric estimation and tests.
[[nodiscard]] Vec3 polar_to_global(const Vec3& cam_position, double boresight_theta,
                                   double boresight_phi, double r, double theta,
                                   double phi);

// Geometric position estimation: de-quantizes a camera POS entry and a VIS
// detection, then lifts the camera-relative polar coordinates into the global
// frame.
[[nodiscard]] Vec3 estimate_position(const sm::PosDataEntry& camera,
                                     const sm::VisDataEntry& detection);

}  // namespace vric::xapp

#include "vric/xapp/estimate.hpp"

#include <cmath>

#include "vric/units.hpp"

namespace vric::xapp {

Vec3 polar_to_global(const Vec3& cam_position, double boresight_theta,
                     double boresight_phi, double r, double theta, double phi) {
  // Detection direction in the camera frame.
  const Vec3 v{r * std::cos(theta) * std::cos(phi),
               r * std::cos(theta) * std::sin(phi), r * std::sin(theta)};
  // Rotate by Rz(phi_b) * Ry(-theta_b).
  const double ct = std::cos(boresight_theta);
  const double st = std::sin(boresight_theta);
  const double cp = std::cos(boresight_phi);
  const double sp = std::sin(boresight_phi);
  return {cam_position.x + ct * cp * v.x - sp * v.y - st * cp * v.z,
          cam_position.y + ct * sp * v.x + cp * v.y - st * sp * v.z,
          cam_position.z + st * v.x + ct * v.z};
}

Vec3 estimate_position(const sm::PosDataEntry& camera,
                       const sm::VisDataEntry& detection) {
  const Vec3 cam_pos{cm_to_meters(camera.x), cm_to_meters(camera.y),
                     cm_to_meters(camera.z)};
  return polar_to_global(cam_pos, centirad_to_rad(camera.theta),
                         centirad_to_rad(camera.phi),
                         cm_to_meters(detection.r),
                         centirad_to_rad(detection.theta),
                         centirad_to_rad(detection.phi));
}

}  // namespace vric::xapp

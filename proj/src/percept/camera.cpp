#include "vric/percept/camera.hpp"

namespace vric::percept {

CameraModel make_camera(const twin::CameraSpec& spec, double fps) {
  CameraModel cam;
  cam.id = spec.id;
  cam.position = spec.position;
  cam.theta = spec.theta;
  cam.phi = spec.phi;
  cam.fov_h = spec.fov_h;
  cam.fov_v = spec.fov_v;
  cam.image_w = spec.image_w;
  cam.image_h = spec.image_h;
  cam.focal_px = spec.image_w / (2.0 * std::tan(spec.fov_h / 2.0));
  cam.range_max = spec.range_max;
  cam.frame_period_s = 1.0 / fps;
  return cam;
}

// Rotation camera->global is Rz(phi) * Ry(-theta); its transpose maps back.
// Columns of R (camera axes in global coordinates):
//   x_cam = (ct*cp, ct*sp, st)   boresight
//   y_cam = (-sp, cp, 0)         left
//   z_cam = (-st*cp, -st*sp, ct) up-ish
Vec3 camera_to_world(const CameraModel& cam, const Vec3& v) {
  const double ct = std::cos(cam.theta);
  const double st = std::sin(cam.theta);
  const double cp = std::cos(cam.phi);
  const double sp = std::sin(cam.phi);
  const Vec3 rotated{ct * cp * v.x - sp * v.y - st * cp * v.z,
                     ct * sp * v.x + cp * v.y - st * sp * v.z,
                     st * v.x + ct * v.z};
  return cam.position + rotated;
}

Vec3 world_to_camera(const CameraModel& cam, const Vec3& p) {
  const Vec3 d = p - cam.position;
  const double ct = std::cos(cam.theta);
  const double st = std::sin(cam.theta);
  const double cp = std::cos(cam.phi);
  const double sp = std::sin(cam.phi);
  return {ct * cp * d.x + ct * sp * d.y + st * d.z,
          -sp * d.x + cp * d.y,
          -st * cp * d.x - st * sp * d.y + ct * d.z};
}

bool in_frustum(const CameraModel& cam, const Vec3& v) {
  if (v.x <= 0.0) {
    return false;
  }
  const double az = std::atan2(v.y, v.x);
  const double el = std::atan2(v.z, std::hypot(v.x, v.y));
  return std::abs(az) <= cam.fov_h / 2.0 && std::abs(el) <= cam.fov_v / 2.0;
}

}  // namespace vric::percept

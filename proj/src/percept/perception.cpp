#include "vric/percept/perception.hpp"

#include <algorithm>
#include <cmath>

#include "vric/entity.hpp"
#include "vric/twin/geometry.hpp"
#include "vric/units.hpp"

namespace vric::percept {

namespace {

struct Target {
  std::int16_t id;
  std::int32_t cls;
  Vec3 position;
  double extent_w_m;  // physical extent driving the synthesized bbox
  double extent_h_m;
};

// Person-with-UE physical extent; the obstacle bbox comes from its box.
constexpr double kPersonWidthM = 0.5;
constexpr double kPersonHeightM = 1.7;

std::optional<sm::VisDataEntry> detect(const CameraModel& cam,
                                       const Target& target,
                                       const NoiseModel& noise,
                                       std::mt19937_64& rng) {
  const Vec3 v_cam = world_to_camera(cam, target.position);
  if (!in_frustum(cam, v_cam)) {
    return std::nullopt;
  }
  Polar polar = to_polar(v_cam);
  if (polar.r > cam.range_max) {
    return std::nullopt;
  }

  if (noise.drop_prob > 0.0 || noise.sigma_r_cm > 0.0 ||
      noise.sigma_angle_rad > 0.0) {
    // Draw in a fixed order so the stream stays reproducible whether or not
    // individual sigmas are zero.
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double dr = gauss(rng) * noise.sigma_r_cm / 100.0;
    const double dtheta = gauss(rng) * noise.sigma_angle_rad;
    const double dphi = gauss(rng) * noise.sigma_angle_rad;
    const double drop = uniform(rng);
    polar.r = std::max(0.0, polar.r + dr);
    polar.theta = std::clamp(polar.theta + dtheta, -M_PI / 2.0, M_PI / 2.0);
    polar.phi = polar.phi + dphi;
    if (polar.phi > M_PI) {
      polar.phi -= 2.0 * M_PI;
    } else if (polar.phi <= -M_PI) {
      polar.phi += 2.0 * M_PI;
    }
    if (drop < noise.drop_prob) {
      return std::nullopt;
    }
  }

  sm::VisDataEntry e;
  e.id = target.id;
  e.cls = target.cls;
  e.r = std::max<std::int32_t>(0, meters_to_cm(polar.r));
  e.theta = rad_to_centirad(polar.theta);
  e.phi = rad_to_centirad(polar.phi);

  // After noise and quantization the detection must still decode to a point
  // inside the frustum; borderline ones fall out of the frame.
  const Vec3 back = from_polar(std::max(0.01, cm_to_meters(e.r)),
                               centirad_to_rad(e.theta), centirad_to_rad(e.phi));
  if (!in_frustum(cam, back) || cm_to_meters(e.r) > cam.range_max ||
      std::abs(e.theta) > sm::kThetaMaxCentirad ||
      std::abs(e.phi) > sm::kPhiMaxCentirad) {
    return std::nullopt;
  }

  // Pinhole bbox synthesis from the (noisy) camera-frame ray.
  const Vec3 ray = from_polar(polar.r, polar.theta, polar.phi);
  const double range = std::max(polar.r, 0.1);
  e.bbx = static_cast<std::int32_t>(
      std::llround(cam.image_w / 2.0 - cam.focal_px * (ray.y / std::max(ray.x, 1e-6))));
  e.bby = static_cast<std::int32_t>(
      std::llround(cam.image_h / 2.0 - cam.focal_px * (ray.z / std::max(ray.x, 1e-6))));
  e.bbw = std::max<std::int32_t>(
      1, static_cast<std::int32_t>(std::llround(cam.focal_px * target.extent_w_m / range)));
  e.bbh = std::max<std::int32_t>(
      1, static_cast<std::int32_t>(std::llround(cam.focal_px * target.extent_h_m / range)));
  return e;
}

}  // namespace

Vec3 detection_reference(const twin::WorldState& world, std::int16_t entity_id) {
  if (entity_id == kUeId) {
    return world.ue.position;
  }
  // Obstacle reference point: footprint center at half height.
  return {world.obstacle.center.x, world.obstacle.center.y,
          world.obstacle.height / 2.0};
}

sm::VisIndication observe(const CameraModel& cam, const twin::WorldState& world,
                          const NoiseModel& noise, std::mt19937_64& rng,
                          const twin::ObstacleBox* occluder,
                          std::int64_t tstamp_us) {
  const Target targets[] = {
      {kUeId, kClsPersonUe, detection_reference(world, kUeId), kPersonWidthM,
       kPersonHeightM},
      {kObstacleId, kClsObstacle, detection_reference(world, kObstacleId),
       2.0 * world.obstacle.half_extents.x, world.obstacle.height},
  };

  sm::VisIndication ind;
  ind.tstamp = tstamp_us;
  for (const Target& t : targets) {
    // The obstacle cannot hide behind itself.
    if (occluder != nullptr && t.id != kObstacleId &&
        twin::compute_los(cam.position, t.position, *occluder) == 1) {
      continue;
    }
    if (auto entry = detect(cam, t, noise, rng)) {
      ind.vis_stats.push_back(*entry);
    }
  }
  ind.len = static_cast<std::uint32_t>(ind.vis_stats.size());
  return ind;
}

sm::PosIndication report_pose(std::span<const twin::EntityPose> entities,
                              std::int64_t tstamp_us) {
  sm::PosIndication ind;
  ind.tstamp = tstamp_us;
  for (const twin::EntityPose& pose : entities) {
    sm::PosDataEntry e;
    e.id = pose.id;
    e.x = meters_to_cm(pose.position.x);
    e.y = meters_to_cm(pose.position.y);
    e.z = meters_to_cm(pose.position.z);
    e.vx = mps_to_cmps(pose.velocity.x);
    e.vy = mps_to_cmps(pose.velocity.y);
    e.vz = mps_to_cmps(pose.velocity.z);
    e.theta = rad_to_centirad(pose.boresight_theta);
    e.phi = rad_to_centirad(pose.boresight_phi);
    ind.pos_stats.push_back(e);
  }
  ind.len = static_cast<std::uint32_t>(ind.pos_stats.size());
  return ind;
}

std::pair<sm::VisIndication, sm::PosIndication> gnb_viewpoint(
    const twin::WorldState& world, const CameraModel& gnb_cam,
    const NoiseModel& noise, std::mt19937_64& rng, std::int64_t tstamp_us) {
  sm::VisIndication vis =
      observe(gnb_cam, world, noise, rng, &world.obstacle, tstamp_us);

  twin::EntityPose cam_pose;
  cam_pose.id = gnb_cam.id;
  cam_pose.position = gnb_cam.position;
  cam_pose.velocity = world.gnb.velocity;
  cam_pose.boresight_theta = gnb_cam.theta;
  cam_pose.boresight_phi = gnb_cam.phi;

  const twin::EntityPose entities[] = {world.gnb, cam_pose};
  sm::PosIndication pos = report_pose(entities, tstamp_us);
  return {std::move(vis), std::move(pos)};
}

}  // namespace vric::percept

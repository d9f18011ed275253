#pragma once

#include <optional>
#include <random>
#include <span>
#include <utility>

#include "vric/percept/camera.hpp"
#include "vric/sm/messages.hpp"
#include "vric/twin/world.hpp"

namespace vric::percept {

// Synthetic detection noise: Gaussian range/angle perturbations plus an
// independent per-detection drop probability. One seeded stream per camera.
struct NoiseModel {
  double sigma_r_cm = 0.0;
  double sigma_angle_rad = 0.0;
  double drop_prob = 0.0;
};

[[nodiscard]] inline NoiseModel noise_from(const twin::NoiseSpec& spec) {
  return {spec.sigma_r_cm, spec.sigma_angle_rad, spec.drop_prob};
}

// Synthesizes the VIS indication a vision function would emit for this
// camera: every target entity (UE, obstacle) inside the frustum and range,
// and not blocked by `occluder` as seen from the camera, becomes one entry
// with camera-relative polar coordinates, noise applied, then quantization.
// Bounding boxes come from pinhole projection of configured physical extents.
sm::VisIndication observe(const CameraModel& cam, const twin::WorldState& world,
                          const NoiseModel& noise, std::mt19937_64& rng,
                          const twin::ObstacleBox* occluder,
                          std::int64_t tstamp_us);

// POS indication for a set of entities, meters -> cm with round-half-away
// quantization; camera boresights ride in theta/phi.
sm::PosIndication report_pose(std::span<const twin::EntityPose> entities,
                              std::int64_t tstamp_us);

// The gNB viewpoint: its onboard camera (pose slaved to the current gNB
// position) observing the scene with the obstacle as occluder, plus the POS
// report covering the gNB itself and the onboard camera.
std::pair<sm::VisIndication, sm::PosIndication> gnb_viewpoint(
    const twin::WorldState& world, const CameraModel& gnb_cam,
    const NoiseModel& noise, std::mt19937_64& rng, std::int64_t tstamp_us);

// Reference point a camera ranges against, per entity.
[[nodiscard]] Vec3 detection_reference(const twin::WorldState& world,
                                       std::int16_t entity_id);

}  // namespace vric::percept

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vric/geom.hpp"
#include "vric/twin/geometry.hpp"
#include "vric/twin/scenario.hpp"

namespace vric::twin {

struct EntityPose {
  std::int16_t id = 0;
  Vec3 position;
  Vec3 velocity;
  double boresight_theta = 0.0;  // cameras only
  double boresight_phi = 0.0;
};

struct WorldState {
  std::uint64_t tick = 0;
  EntityPose gnb;
  EntityPose ue;
  ObstacleBox obstacle;
  std::vector<EntityPose> cameras;
  int los = 0;  // 0 = LoS, 1 = NLoS; kept consistent with compute_los
  bool los_degenerate = false;
};

// Ground-truth geometry and kinematics. The gNB rides an x-axis rail: each
// step it moves toward the latest commanded target at up to v_max, clamped to
// x_bounds. The UE follows its waypoint schedule at the configured walking
// speed; the obstacle drifts at its constant velocity.
class World {
 public:
  explicit World(const ScenarioConfig& cfg);

  // Scripted initial placement (evaluation scenario).
  void reset();

  // Randomized placement for training: gNB start, UE walk schedule, obstacle
  // jitter all drawn from `rng`.
  void reset_randomized(std::mt19937_64& rng);

  [[nodiscard]] const WorldState& state() const { return state_; }
  [[nodiscard]] double time_s() const;
  [[nodiscard]] const ScenarioConfig& config() const { return cfg_; }

  // Receive a movement command: the platform takes the velocity implied by
  // covering the gap within one control interval (clamped to v_max) and
  // holds it until the next command. Rail contact zeroes the velocity.
  void set_gnb_target_x(double x_m);
  [[nodiscard]] double gnb_target_x() const { return gnb_target_x_; }

  // Advances all entities by dt and recomputes the LoS flag.
  void step(double dt);

  // Environment path: places the gNB directly at clamp(gnb_x_new) instead of
  // following a target, then advances everything else as step() does.
  void step_kinematic(double gnb_x_new, double dt);

 private:
  void step_rest(double x0, double dt);
  void place(double gnb_x, const std::vector<UeWaypoint>& schedule,
             const ObstacleBox& obstacle);
  void advance_ue(double dt);

  ScenarioConfig cfg_;
  WorldState state_;
  double gnb_target_x_ = 0.0;
  double gnb_v_cmd_ = 0.0;  // commanded velocity, held between commands
  double time_s_ = 0.0;

  std::vector<UeWaypoint> schedule_;
  std::size_t next_waypoint_ = 0;
  bool ue_walking_ = false;
  Vec2 ue_walk_target_;
};

}  // namespace vric::twin

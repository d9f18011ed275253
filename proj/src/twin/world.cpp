#include "vric/twin/world.hpp"

#include <algorithm>
#include <cmath>

#include "vric/entity.hpp"

namespace vric::twin {

World::World(const ScenarioConfig& cfg) : cfg_(cfg) { reset(); }

void World::place(double gnb_x, const std::vector<UeWaypoint>& schedule,
                  const ObstacleBox& obstacle) {
  schedule_ = schedule;
  next_waypoint_ = 1;  // entry 0 is the start position
  ue_walking_ = false;
  time_s_ = 0.0;

  state_ = WorldState{};
  state_.gnb.id = kGnbId;
  state_.gnb.position = {gnb_x, cfg_.gnb_start.y, cfg_.gnb_start.z};
  state_.ue.id = kUeId;
  state_.ue.position = {schedule_.front().x, schedule_.front().y, cfg_.ue_z};
  state_.obstacle = obstacle;

  for (const CameraSpec& cam : cfg_.cameras) {
    EntityPose pose;
    pose.id = cam.id;
    pose.position = cam.position;
    pose.boresight_theta = cam.theta;
    pose.boresight_phi = cam.phi;
    state_.cameras.push_back(pose);
  }

  gnb_target_x_ = gnb_x;
  gnb_v_cmd_ = 0.0;
  state_.los = compute_los(state_.gnb.position, state_.ue.position,
                           state_.obstacle, &state_.los_degenerate);
}

void World::set_gnb_target_x(double x_m) {
  gnb_target_x_ = x_m;
  gnb_v_cmd_ = std::clamp((x_m - state_.gnb.position.x) / cfg_.control.t_ctrl_s,
                          -cfg_.control.v_max, cfg_.control.v_max);
}

void World::reset() { place(cfg_.gnb_start.x, cfg_.ue_schedule, cfg_.obstacle); }

void World::reset_randomized(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> gnb_x(cfg_.control.x_min + 0.5,
                                               cfg_.control.x_max - 0.5);
  // UE confined to the far half of the room (away from the gNB rail).
  std::uniform_real_distribution<double> ue_x(0.5, cfg_.room.x - 0.5);
  std::uniform_real_distribution<double> ue_y(cfg_.room.y / 2.0,
                                              cfg_.room.y - 0.5);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::uniform_real_distribution<double> walk_time(2.0, cfg_.timing.duration_s - 2.0);
  std::uniform_int_distribution<int> n_walks(0, 2);
  std::bernoulli_distribution start_blocked(0.5);

  ObstacleBox obstacle = cfg_.obstacle;
  obstacle.center.x += jitter(rng);
  obstacle.center.y += jitter(rng);
  obstacle.center.x = std::clamp(obstacle.center.x, obstacle.half_extents.x,
                                 cfg_.room.x - obstacle.half_extents.x);
  obstacle.center.y = std::clamp(obstacle.center.y, obstacle.half_extents.y,
                                 cfg_.room.y - obstacle.half_extents.y);

  const double gx = gnb_x(rng);
  const Vec3 gnb_pos{gx, cfg_.gnb_start.y, cfg_.gnb_start.z};

  // Uniform UE placement rarely spawns behind the obstacle, so a policy
  // trained on it hardly ever sees a blocked start. Rejection-sample half of
  // the episodes into NLoS starts to keep the resolution task in
  // distribution.
  const bool want_blocked = start_blocked(rng);
  Vec2 start{ue_x(rng), ue_y(rng)};
  for (int tries = 0; tries < 200; ++tries) {
    const int los =
        compute_los(gnb_pos, {start.x, start.y, cfg_.ue_z}, obstacle);
    if ((los == 1) == want_blocked) {
      break;
    }
    start = {ue_x(rng), ue_y(rng)};
  }

  std::vector<UeWaypoint> schedule;
  schedule.push_back({0.0, start.x, start.y});
  const int extra = n_walks(rng);
  std::vector<double> times;
  for (int i = 0; i < extra; ++i) {
    times.push_back(walk_time(rng));
  }
  std::sort(times.begin(), times.end());
  for (double t : times) {
    schedule.push_back({t, ue_x(rng), ue_y(rng)});
  }

  place(gx, schedule, obstacle);
}

double World::time_s() const { return time_s_; }

void World::advance_ue(double dt) {
  Vec2 pos = state_.ue.position.xy();
  const Vec2 before = pos;
  double budget = cfg_.ue_speed * dt;

  // A due waypoint starts a walk toward its position; on arrival the UE
  // dwells until the next one is due.
  while (budget > 0.0) {
    if (!ue_walking_) {
      if (next_waypoint_ < schedule_.size() &&
          time_s_ >= schedule_[next_waypoint_].t_s) {
        ue_walk_target_ = {schedule_[next_waypoint_].x,
                           schedule_[next_waypoint_].y};
        ++next_waypoint_;
        ue_walking_ = true;
      } else {
        break;
      }
    }
    const Vec2 gap = ue_walk_target_ - pos;
    const double dist = gap.norm();
    if (dist <= budget) {
      pos = ue_walk_target_;
      budget -= dist;
      ue_walking_ = false;
    } else {
      pos = pos + gap * (budget / dist);
      budget = 0.0;
    }
  }

  state_.ue.position = {pos.x, pos.y, cfg_.ue_z};
  state_.ue.velocity = {(pos.x - before.x) / dt, (pos.y - before.y) / dt, 0.0};
}

void World::step(double dt) {
  // gNB: glide at the commanded velocity until the next command rearms it.
  // Rail contact stops the platform. Reported velocity is the realized
  // displacement rate.
  const double x0 = state_.gnb.position.x;
  const double x_raw = x0 + gnb_v_cmd_ * dt;
  const double x1 = std::clamp(x_raw, cfg_.control.x_min, cfg_.control.x_max);
  if (x1 != x_raw) {
    gnb_v_cmd_ = 0.0;
  }
  state_.gnb.position.x = x1;
  step_rest(x0, dt);
}

void World::step_kinematic(double gnb_x_new, double dt) {
  const double x0 = state_.gnb.position.x;
  state_.gnb.position.x =
      std::clamp(gnb_x_new, cfg_.control.x_min, cfg_.control.x_max);
  step_rest(x0, dt);
}

void World::step_rest(double x0, double dt) {
  state_.gnb.velocity = {(state_.gnb.position.x - x0) / dt, 0.0, 0.0};

  advance_ue(dt);

  state_.obstacle.center = state_.obstacle.center + state_.obstacle.velocity * dt;

  time_s_ += dt;
  state_.tick += 1;
  state_.los = compute_los(state_.gnb.position, state_.ue.position,
                           state_.obstacle, &state_.los_degenerate);
}

}  // namespace vric::twin

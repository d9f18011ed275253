#pragma once

#include <array>
#include <string>

#include "vric/geom.hpp"

namespace vric {

inline constexpr int kStateDim = 11;
inline constexpr int kNumActions = 3;

// The 11-feature controller input. Feature order is fixed and versioned:
// trained policy weights depend on it, and the policy file header records it.
struct StateVector {
  double x_gnb = 0.0;       // absolute gNB x (m)
  double x_gnb_ue = 0.0;    // UE position relative to gNB (m)
  double y_gnb_ue = 0.0;
  double x_gnb_obs = 0.0;   // obstacle position relative to gNB (m)
  double y_gnb_obs = 0.0;
  double vx_gnb = 0.0;      // gNB velocity along x (m/s)
  double vx_ue = 0.0;       // UE velocity (m/s)
  double vy_ue = 0.0;
  double vx_obs = 0.0;      // obstacle velocity (m/s)
  double vy_obs = 0.0;
  int l_status = 0;         // 0 = LoS, 1 = NLoS

  [[nodiscard]] std::array<double, kStateDim> as_array() const {
    return {x_gnb, x_gnb_ue, y_gnb_ue, x_gnb_obs, y_gnb_obs, vx_gnb,
            vx_ue, vy_ue, vx_obs, vy_obs, static_cast<double>(l_status)};
  }

  bool operator==(const StateVector&) const = default;
};

[[nodiscard]] inline const std::array<std::string, kStateDim>& state_feature_names() {
  static const std::array<std::string, kStateDim> names = {
      "x_gnb", "x_gnb_ue", "y_gnb_ue", "x_gnb_obs", "y_gnb_obs", "vx_gnb",
      "vx_ue", "vy_ue", "vx_obs", "vy_obs", "l_status"};
  return names;
}

// Relative positions are (target - gNB); both the training environment and
// the controller build their observations through this one function.
[[nodiscard]] inline StateVector make_state_vector(
    const Vec3& gnb_pos, const Vec3& gnb_vel, const Vec2& ue_pos,
    const Vec2& ue_vel, const Vec2& obs_pos, const Vec2& obs_vel,
    int l_status) {
  StateVector sv;
  sv.x_gnb = gnb_pos.x;
  sv.x_gnb_ue = ue_pos.x - gnb_pos.x;
  sv.y_gnb_ue = ue_pos.y - gnb_pos.y;
  sv.x_gnb_obs = obs_pos.x - gnb_pos.x;
  sv.y_gnb_obs = obs_pos.y - gnb_pos.y;
  sv.vx_gnb = gnb_vel.x;
  sv.vx_ue = ue_vel.x;
  sv.vy_ue = ue_vel.y;
  sv.vx_obs = obs_vel.x;
  sv.vy_obs = obs_vel.y;
  sv.l_status = l_status;
  return sv;
}

}  // namespace vric

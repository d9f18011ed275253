#include "vric/xapp/controller.hpp"

#include <algorithm>
#include <cmath>

#include "vric/entity.hpp"
#include "vric/sm/codec.hpp"
#include "vric/units.hpp"
#include "vric/xapp/estimate.hpp"

namespace vric::xapp {

ControllerConfig controller_config_from(const twin::ScenarioConfig& scn) {
  ControllerConfig cfg;
  cfg.t_ctrl_s = scn.control.t_ctrl_s;
  cfg.delta = scn.control.delta;
  cfg.v_max = scn.control.v_max;
  cfg.fps = scn.timing.fps;
  cfg.stale_timeout_ticks = static_cast<std::uint64_t>(std::lround(scn.timing.fps));
  cfg.obstacle_half_extents = scn.obstacle.half_extents;
  cfg.obstacle_height = scn.obstacle.height;
  cfg.agent_cameras[kRefCamAgent] = kRefCamId;
  cfg.agent_cameras[kGnbAgent] = kGnbCamId;
  return cfg;
}

VisionController::VisionController(ControllerConfig cfg,
                                   std::optional<dqn::Policy> policy)
    : cfg_(std::move(cfg)),
      policy_(std::move(policy)),
      tracker_(cfg_.ema_alpha, cfg_.stale_timeout_ticks, cfg_.fps) {
  if (policy_.has_value()) {
    // The policy was trained against specific control constants; refuse to
    // drive a loop configured differently.
    if (policy_->meta.delta != cfg_.delta || policy_->meta.v_max != cfg_.v_max ||
        policy_->meta.t_ctrl_s != cfg_.t_ctrl_s) {
      throw dqn::SchemaMismatch(
          "policy control constants do not match controller config");
    }
  }
}

void VisionController::ingest(const sm::BusEnvelope& env) {
  switch (env.kind) {
    case sm::MsgKind::kPosIndication: {
      const sm::PosIndication ind = sm::decode_pos_indication(env.payload);
      for (const sm::PosDataEntry& e : ind.pos_stats) {
        if (e.id == kGnbId) {
          gnb_entry_ = e;
          gnb_seen_ = true;
        } else {
          camera_registry_[e.id] = {e, env.delivery_tick};
        }
      }
      break;
    }
    case sm::MsgKind::kVisIndication: {
      const sm::VisIndication ind = sm::decode_vis_indication(env.payload);
      for (const sm::VisDataEntry& e : ind.vis_stats) {
        pending_.push_back({env.sender, e});
      }
      break;
    }
    case sm::MsgKind::kPosControl:
      break;  // our own output; not an input
  }
}

Vec3 VisionController::estimate_from(const std::string& sender,
                                     const sm::VisDataEntry& detection,
                                     std::uint64_t tick_now) const {
  const auto cam_id = cfg_.agent_cameras.find(sender);
  if (cam_id == cfg_.agent_cameras.end()) {
    throw StaleCameraPose("no camera configured for agent " + sender);
  }
  const auto cam = camera_registry_.find(cam_id->second);
  if (cam == camera_registry_.end() ||
      tick_now - cam->second.tick > cfg_.stale_timeout_ticks) {
    throw StaleCameraPose("camera pose for agent " + sender +
                          " missing or older than stale timeout");
  }
  return estimate_position(cam->second.entry, detection);
}

int VisionController::infer_los(const Vec3& gnb_pos, const Vec3& fused_ue,
                                const Vec3& fused_obs) const {
  twin::ObstacleBox box;
  box.center = fused_obs.xy();
  box.half_extents = cfg_.obstacle_half_extents;
  box.height = cfg_.obstacle_height;
  return twin::compute_los(gnb_pos, fused_ue, box);
}

StateVector VisionController::build_state() const {
  if (!gnb_seen_) {
    throw MissingTrack("gNB pose not yet reported");
  }
  if (!tracker_.has(kUeId) || !tracker_.has(kObstacleId)) {
    throw MissingTrack("UE or obstacle track missing");
  }
  const TrackedEntity& ue = tracker_.get(kUeId);
  const TrackedEntity& obs = tracker_.get(kObstacleId);

  const Vec3 gnb_pos{cm_to_meters(gnb_entry_.x), cm_to_meters(gnb_entry_.y),
                     cm_to_meters(gnb_entry_.z)};
  const Vec3 gnb_vel{cmps_to_mps(gnb_entry_.vx), cmps_to_mps(gnb_entry_.vy),
                     cmps_to_mps(gnb_entry_.vz)};

  const int los = infer_los(gnb_pos, ue.position, obs.position);
  return make_state_vector(gnb_pos, gnb_vel, ue.position.xy(), ue.velocity,
                           obs.position.xy(), obs.velocity, los);
}

sm::PosControl VisionController::decide_and_control(const StateVector& sv) {
  if (!policy_.has_value()) {
    throw dqn::PolicyNotLoaded("no policy loaded");
  }
  const auto q = policy_->q_values(sv);
  int action = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (q[a] > q[action]) {
      action = a;
    }
  }

  double v_new = sv.vx_gnb;
  if (action == 1) {
    v_new += cfg_.delta;
  } else if (action == 2) {
    v_new -= cfg_.delta;
  }
  v_new = std::clamp(v_new, -cfg_.v_max, cfg_.v_max);
  const double x_target = sv.x_gnb + v_new * cfg_.t_ctrl_s;

  sm::PosControl ctl;
  ctl.x = meters_to_cm(x_target);
  ctl.y = gnb_entry_.y;
  ctl.z = gnb_entry_.z;
  ctl.tstamp = seconds_to_us(static_cast<double>(current_tick_) / cfg_.fps);

  DecisionRow row;
  row.tick = current_tick_;
  row.features = sv.as_array();
  row.q = q;
  row.action = action;
  row.x_target_m = x_target;
  log_.push_back(row);

  return ctl;
}

std::optional<sm::PosControl> VisionController::tick(sm::MessageBus& bus,
                                                     std::uint64_t tick_now) {
  current_tick_ = tick_now;
  for (const sm::BusEnvelope& env : bus.poll(kXappAgent, tick_now)) {
    ingest(env);
  }

  // Step 1: geometric estimation against each detection's camera pose.
  // Detections without a fresh camera reference are skipped, not fatal.
  std::vector<Vec3> ue_estimates;
  std::vector<Vec3> obs_estimates;
  for (const PendingDetection& det : pending_) {
    Vec3 p;
    try {
      p = estimate_from(det.sender, det.entry, tick_now);
    } catch (const StaleCameraPose&) {
      continue;
    }
    if (det.entry.cls == kClsPersonUe) {
      ue_estimates.push_back(p);
    } else if (det.entry.cls == kClsObstacle) {
      obs_estimates.push_back(p);
    }
  }
  pending_.clear();

  // Step 2: fusion (or coasting when nothing arrived).
  tracker_.update(kUeId, ue_estimates, tick_now);
  tracker_.update(kObstacleId, obs_estimates, tick_now);

  // Steps 3-5: state vector, inference, control. Without full tracks the
  // controller holds.
  if (!policy_.has_value()) {
    return std::nullopt;
  }
  StateVector sv;
  try {
    sv = build_state();
  } catch (const MissingTrack&) {
    return std::nullopt;
  }

  sm::PosControl ctl = decide_and_control(sv);
  sm::BusEnvelope env;
  env.sender = kXappAgent;
  env.kind = sm::MsgKind::kPosControl;
  env.payload = sm::encode_pos_control(ctl);
  env.delivery_tick = tick_now;
  bus.publish(std::move(env));
  return ctl;
}

}  // namespace vric::xapp

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vric/dqn/policy.hpp"
#include "vric/sm/bus.hpp"
#include "vric/state_vector.hpp"
#include "vric/twin/geometry.hpp"
#include "vric/xapp/tracker.hpp"

namespace vric::xapp {

struct MissingTrack : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ControllerConfig {
  double t_ctrl_s = 0.2;
  double delta = 0.25;
  double v_max = 1.0;
  double fps = 12.0;
  std::uint64_t stale_timeout_ticks = 12;  // 1 s at 12 fps
  double ema_alpha = 0.5;
  // Obstacle physical extents for LoS inference come from configuration, not
  // from bounding boxes.
  Vec2 obstacle_half_extents{0.5, 0.5};
  double obstacle_height = 2.0;
  // sender agent -> POS entry id of the camera its VIS detections came from
  std::map<std::string, std::int16_t> agent_cameras;
};

[[nodiscard]] ControllerConfig controller_config_from(const twin::ScenarioConfig& scn);

struct DecisionRow {
  std::uint64_t tick = 0;
  std::array<double, kStateDim> features{};
  std::array<double, kNumActions> q{};
  int action = 0;
  double x_target_m = 0.0;
};

// The controller xApp: consumes POS/VIS indications from the bus each control
// tick, runs geometric estimation, fusion, state construction and policy
// inference, and publishes at most one POS control command per tick. Missing
// tracks or internal errors degrade to "hold" (no command).
class VisionController {
 public:
  VisionController(ControllerConfig cfg, std::optional<dqn::Policy> policy);

  // Drains the bus up to `tick_now` and runs the decision pipeline. Returns
  // the published control, if any.
  std::optional<sm::PosControl> tick(sm::MessageBus& bus, std::uint64_t tick_now);

  // Pipeline pieces, exposed for direct testing.
  // Throws StaleCameraPose when the camera's POS entry is older than the
  // stale timeout (tick() catches this and skips the detection).
  [[nodiscard]] Vec3 estimate_from(const std::string& sender,
                                   const sm::VisDataEntry& detection,
                                   std::uint64_t tick_now) const;
  [[nodiscard]] int infer_los(const Vec3& gnb_pos, const Vec3& fused_ue,
                              const Vec3& fused_obs) const;
  [[nodiscard]] StateVector build_state() const;  // throws MissingTrack
  sm::PosControl decide_and_control(const StateVector& sv);  // PolicyNotLoaded

  [[nodiscard]] const std::vector<DecisionRow>& decision_log() const {
    return log_;
  }
  [[nodiscard]] const Tracker& tracker() const { return tracker_; }

 private:
  void ingest(const sm::BusEnvelope& env);

  ControllerConfig cfg_;
  std::optional<dqn::Policy> policy_;
  Tracker tracker_;

  struct CameraEntry {
    sm::PosDataEntry entry;
    std::uint64_t tick = 0;
  };
  std::map<std::int16_t, CameraEntry> camera_registry_;

  struct PendingDetection {
    std::string sender;
    sm::VisDataEntry entry;
  };
  std::vector<PendingDetection> pending_;

  bool gnb_seen_ = false;
  sm::PosDataEntry gnb_entry_{};

  std::uint64_t current_tick_ = 0;
  std::vector<DecisionRow> log_;
};

}  // namespace vric::xapp

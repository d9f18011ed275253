#include "vric/twin/env.hpp"

#include <algorithm>
#include <cmath>

namespace vric::twin {

EnvConfig env_config_from(const ScenarioConfig& scenario) {
  EnvConfig cfg;
  cfg.delta = scenario.control.delta;
  cfg.v_max = scenario.control.v_max;
  cfg.x_min = scenario.control.x_min;
  cfg.x_max = scenario.control.x_max;
  cfg.t_ctrl_s = scenario.control.t_ctrl_s;
  cfg.episode_len = static_cast<int>(
      std::lround(scenario.timing.duration_s / scenario.control.t_ctrl_s));
  return cfg;
}

namespace {

void check_config(const EnvConfig& cfg) {
  if (cfg.delta <= 0 || cfg.v_max <= 0 || cfg.t_ctrl_s <= 0 ||
      cfg.episode_len <= 0 || cfg.x_min >= cfg.x_max) {
    throw InvalidConfig("environment config is invalid");
  }
}

StateVector observe(const WorldState& s) {
  return make_state_vector(s.gnb.position, s.gnb.velocity,
                           s.ue.position.xy(), {s.ue.velocity.x, s.ue.velocity.y},
                           s.obstacle.center, s.obstacle.velocity, s.los);
}

}  // namespace

Environment::Environment(const ScenarioConfig& scenario, const EnvConfig& cfg,
                         Mode mode)
    : world_(scenario), cfg_(cfg), mode_(mode) {
  check_config(cfg_);
}

StateVector Environment::reset(std::uint64_t seed) {
  if (mode_ == Mode::kTrain) {
    std::mt19937_64 rng(seed);
    world_.reset_randomized(rng);
  } else {
    world_.reset();
  }
  was_reset_ = true;
  step_count_ = 0;
  gnb_vx_ = 0.0;
  return observe(world_.state());
}

StateVector Environment::observation() const { return observe(world_.state()); }

StepResult Environment::step(int action) {
  if (!was_reset_) {
    throw NotReset("step() before reset()");
  }

  // Table-style action semantics: 0 maintain, 1 increase, 2 decrease, then
  // clamp the commanded speed.
  double v = gnb_vx_;
  if (action == 1) {
    v += cfg_.delta;
  } else if (action == 2) {
    v -= cfg_.delta;
  }
  v = std::clamp(v, -cfg_.v_max, cfg_.v_max);

  const double x0 = world_.state().gnb.position.x;
  const double x_raw = x0 + v * cfg_.t_ctrl_s;
  world_.step_kinematic(x_raw, cfg_.t_ctrl_s);
  // If the rail clamped the move, the commanded velocity collapses to what
  // was actually realized.
  gnb_vx_ = (world_.state().gnb.position.x == x_raw) ? v
                                                     : world_.state().gnb.velocity.x;

  const WorldState& s = world_.state();
  const double d = distance(s.gnb.position, s.ue.position);
  const double pl = path_loss_db(d, s.los, world_.config().link);

  StepResult out;
  StateVector sv = observe(s);
  sv.vx_gnb = gnb_vx_;
  out.observation = sv;
  out.reward = -cfg_.reward_scale * pl;
  ++step_count_;
  out.done = step_count_ >= cfg_.episode_len;
  return out;
}

}  // namespace vric::twin

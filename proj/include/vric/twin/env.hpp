#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "vric/state_vector.hpp"
#include "vric/twin/world.hpp"

namespace vric::twin {

struct NotReset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnvConfig {
  double delta = 0.25;        // velocity increment per action (m/s)
  double v_max = 1.0;
  double x_min = 0.0;
  double x_max = 8.0;
  double t_ctrl_s = 0.2;
  int episode_len = 125;      // 25 s at 200 ms steps
  double reward_scale = 0.01; // reward = -reward_scale * PL_dB
};

[[nodiscard]] EnvConfig env_config_from(const ScenarioConfig& scenario);

struct StepResult {
  StateVector observation;
  double reward = 0.0;
  bool done = false;
};

// Gym-style environment over the digital twin. Training mode randomizes the
// initial layout per episode; eval mode replays the scripted scenario.
// Observations are ground-truth state vectors; the reward is the scaled
// negative path loss of the gNB-UE link after the step.
class Environment {
 public:
  enum class Mode { kTrain, kEval };

  Environment(const ScenarioConfig& scenario, const EnvConfig& cfg, Mode mode);

  StateVector reset(std::uint64_t seed);
  StepResult step(int action);  // action in {0: maintain, 1: +delta, 2: -delta}

  [[nodiscard]] const WorldState& world_state() const { return world_.state(); }
  [[nodiscard]] const EnvConfig& config() const { return cfg_; }
  [[nodiscard]] int episode_step() const { return step_count_; }
  [[nodiscard]] StateVector observation() const;

 private:
  World world_;
  EnvConfig cfg_;
  Mode mode_;
  bool was_reset_ = false;
  int step_count_ = 0;
  double gnb_vx_ = 0.0;  // commanded velocity, zeroed when the rail clamps
};

}  // namespace vric::twin

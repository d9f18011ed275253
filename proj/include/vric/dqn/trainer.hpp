#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "vric/dqn/policy.hpp"
#include "vric/twin/env.hpp"

namespace vric::dqn {

// Training aborted on a non-finite loss.
struct Diverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  double gamma = 0.99;
  double lr = 1e-3;
  int batch_size = 64;
  std::size_t buffer_capacity = 50000;
  int target_sync_period = 500;      // updates between target-network copies
  double eps_start = 1.0;
  double eps_end = 0.05;
  int eps_decay_steps = 20000;
  int total_steps = 40000;           // environment steps
  int learn_start = 1000;            // buffer fill before updates begin
  std::vector<std::size_t> hidden = {64, 64};
  std::uint64_t seed = 1;
  // Periodic greedy evaluation on fixed held-out episodes; the returned
  // policy is the best snapshot, which shields against late-training
  // collapse.
  int eval_period_updates = 1000;
  int eval_episodes = 6;
};

struct EpisodeLog {
  int episode = 0;
  double episode_return = 0.0;
  double nlos_fraction = 0.0;
  double epsilon = 0.0;
  double mean_loss = 0.0;
};

struct TrainResult {
  Policy policy;              // best-evaluated snapshot
  std::vector<EpisodeLog> log;
  int updates = 0;
  double best_eval_return = 0.0;
  int best_eval_update = 0;
};

using EnvFactory = std::function<std::unique_ptr<twin::Environment>()>;

[[nodiscard]] EnvFactory training_env_factory(const twin::ScenarioConfig& scn);

// Seeded epsilon-greedy DQN training against the twin environment. Fully
// deterministic for a fixed (config, scenario) pair.
TrainResult train(const EnvFactory& make_env, const Normalization& norm,
                  const PolicyMeta& meta, const TrainConfig& cfg);

}  // namespace vric::dqn

#include "vric/dqn/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "vric/dqn/adam.hpp"
#include "vric/dqn/loss.hpp"
#include "vric/dqn/replay.hpp"

namespace vric::dqn {

namespace {

double epsilon_at(const TrainConfig& cfg, int step) {
  if (step >= cfg.eps_decay_steps) {
    return cfg.eps_end;
  }
  const double frac = static_cast<double>(step) / cfg.eps_decay_steps;
  return cfg.eps_start + frac * (cfg.eps_end - cfg.eps_start);
}

int greedy_action(const QNetwork& net, const std::array<double, kStateDim>& x) {
  const auto q = net.forward_one(std::span<const double>(x.data(), x.size()));
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (q[a] > q[best]) {
      best = a;
    }
  }
  return best;
}

// Mean greedy return over fixed held-out episodes.
double evaluate_greedy(const QNetwork& net, const Normalization& norm,
                       twin::Environment& env, const TrainConfig& cfg) {
  double total = 0.0;
  for (int ep = 0; ep < cfg.eval_episodes; ++ep) {
    StateVector sv = env.reset(cfg.seed * 7776001ULL + 31ULL * ep);
    bool done = false;
    while (!done) {
      const twin::StepResult r = env.step(greedy_action(net, norm.apply(sv)));
      total += r.reward;
      sv = r.observation;
      done = r.done;
    }
  }
  return total / cfg.eval_episodes;
}

}  // namespace

EnvFactory training_env_factory(const twin::ScenarioConfig& scn) {
  return [scn] {
    return std::make_unique<twin::Environment>(scn, twin::env_config_from(scn),
                                               twin::Environment::Mode::kTrain);
  };
}

TrainResult train(const EnvFactory& make_env, const Normalization& norm,
                  const PolicyMeta& meta, const TrainConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> random_action(0, kNumActions - 1);

  std::unique_ptr<twin::Environment> env = make_env();
  std::unique_ptr<twin::Environment> eval_env = make_env();

  std::vector<std::size_t> dims;
  dims.push_back(kStateDim);
  dims.insert(dims.end(), cfg.hidden.begin(), cfg.hidden.end());
  dims.push_back(kNumActions);

  QNetwork net = QNetwork::he_init(dims, rng);
  QNetwork target = net;
  AdamOptimizer opt(net, cfg.lr);
  ReplayBuffer buffer(cfg.buffer_capacity);

  TrainResult result;
  QNetwork best = net;
  double best_return = -std::numeric_limits<double>::infinity();
  int best_update = 0;
  std::vector<Transition> batch;

  int episode = 0;
  int global_step = 0;
  int updates = 0;

  while (global_step < cfg.total_steps) {
    StateVector sv =
        env->reset(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(episode));
    std::array<double, kStateDim> obs = norm.apply(sv);

    double ep_return = 0.0;
    int nlos_steps = 0;
    int ep_steps = 0;
    double loss_sum = 0.0;
    int loss_count = 0;
    bool done = false;

    while (!done && global_step < cfg.total_steps) {
      const double eps = epsilon_at(cfg, global_step);
      const int action =
          (coin(rng) < eps) ? random_action(rng) : greedy_action(net, obs);

      const twin::StepResult sr = env->step(action);
      const std::array<double, kStateDim> next_obs = norm.apply(sr.observation);

      Transition t;
      t.state = obs;
      t.next_state = next_obs;
      t.action = action;
      t.reward = sr.reward;
      t.done = sr.done;
      buffer.push(t);

      obs = next_obs;
      ep_return += sr.reward;
      nlos_steps += sr.observation.l_status;
      ++ep_steps;
      ++global_step;
      done = sr.done;

      if (buffer.size() >= static_cast<std::size_t>(cfg.learn_start) &&
          buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
        buffer.sample(rng, cfg.batch_size, batch);
        TdLoss td = td_loss(net, target, batch, cfg.gamma);
        if (!std::isfinite(td.loss)) {
          throw Diverged("non-finite TD loss at step " +
                         std::to_string(global_step));
        }
        opt.apply(net, td.grads);
        ++updates;
        loss_sum += td.loss;
        ++loss_count;
        if (updates % cfg.target_sync_period == 0) {
          target = net;
        }
        if (updates % cfg.eval_period_updates == 0) {
          const double score = evaluate_greedy(net, norm, *eval_env, cfg);
          if (score > best_return) {
            best_return = score;
            best = net;
            best_update = updates;
          }
        }
      }
    }

    EpisodeLog log;
    log.episode = episode;
    log.episode_return = ep_return;
    log.nlos_fraction =
        ep_steps > 0 ? static_cast<double>(nlos_steps) / ep_steps : 0.0;
    log.epsilon = epsilon_at(cfg, global_step);
    log.mean_loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
    result.log.push_back(log);
    ++episode;
  }

  // The final weights compete with the periodic snapshots.
  if (updates > 0) {
    const double score = evaluate_greedy(net, norm, *eval_env, cfg);
    if (score > best_return) {
      best_return = score;
      best = net;
      best_update = updates;
    }
  }

  result.updates = updates;
  result.best_eval_return = best_return;
  result.best_eval_update = best_update;
  result.policy.net = (updates > 0) ? std::move(best) : std::move(net);
  result.policy.norm = norm;
  result.policy.meta = meta;
  return result;
}

}  // namespace vric::dqn

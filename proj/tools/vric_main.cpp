// vric: vision-aided gNB mobility-control sandbox.
//
// Subcommands: train, run, compare, eval-loc, replay. See README for the
// output file layout.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vric/dqn/trainer.hpp"
#include "vric/harness/report.hpp"
#include "vric/harness/runner.hpp"
#include "vric/state_vector.hpp"

namespace {

using namespace vric;

dqn::PolicyMeta meta_from(const twin::ScenarioConfig& scn) {
  dqn::PolicyMeta meta;
  meta.delta = scn.control.delta;
  meta.v_max = scn.control.v_max;
  meta.t_ctrl_s = scn.control.t_ctrl_s;
  return meta;
}

int cmd_train(const std::string& scenario_file, std::uint64_t seed,
              const std::string& out_dir, int steps) {
  const twin::ScenarioConfig scn = twin::load_scenario(scenario_file);

  dqn::TrainConfig cfg;
  cfg.seed = seed;
  if (steps > 0) {
    cfg.total_steps = steps;
  }

  const dqn::TrainResult result =
      dqn::train(dqn::training_env_factory(scn), dqn::make_normalization(scn),
                 meta_from(scn), cfg);

  std::filesystem::create_directories(out_dir);
  const auto policy_file = std::filesystem::path(out_dir) / "policy.json";
  dqn::save_policy(result.policy, policy_file);
  harness::write_train_log_csv(result.log,
                               std::filesystem::path(out_dir) / "train_log.csv");

  double tail_nlos = 0.0;
  const std::size_t tail =
      std::min<std::size_t>(100, result.log.size() > 0 ? result.log.size() : 1);
  for (std::size_t i = result.log.size() - tail; i < result.log.size(); ++i) {
    tail_nlos += result.log[i].nlos_fraction;
  }
  std::printf("trained %zu episodes (%d updates); last-%zu mean NLoS fraction %.3f\n",
              result.log.size(), result.updates, tail, tail_nlos / tail);
  std::printf("policy written to %s\n", policy_file.string().c_str());
  return 0;
}

int cmd_run(const std::string& scenario_file, const std::string& mode_name,
            const std::string& policy_file, std::uint64_t seed,
            const std::string& out_dir, const std::string& noise_profile) {
  const twin::ScenarioConfig scn = twin::load_scenario(scenario_file);
  harness::RunOptions opts;
  opts.mode = (mode_name == "controlled") ? harness::RunMode::kControlled
                                          : harness::RunMode::kStatic;
  opts.seed = seed;
  opts.zero_noise = (noise_profile == "zero");

  std::optional<dqn::Policy> policy;
  if (opts.mode == harness::RunMode::kControlled) {
    if (policy_file.empty()) {
      std::fprintf(stderr, "controlled mode requires --policy\n");
      return 2;
    }
    policy = dqn::load_policy(policy_file);
  }

  const harness::RunReport report =
      harness::run_scenario(scn, opts, policy ? &*policy : nullptr);
  harness::emit_run_outputs(report, out_dir);
  std::printf("%s run: %zu ticks, NLoS %.3f s of %.3f s\n",
              harness::to_string(report.mode), report.rows.size(),
              report.nlos_s, report.duration_s);
  return 0;
}

int cmd_compare(const std::string& scenario_file, const std::string& policy_file,
                std::uint64_t seed, const std::string& out_dir,
                const std::string& noise_profile) {
  const twin::ScenarioConfig scn = twin::load_scenario(scenario_file);
  const dqn::Policy policy = dqn::load_policy(policy_file);

  harness::RunOptions opts;
  opts.seed = seed;
  opts.zero_noise = (noise_profile == "zero");

  opts.mode = harness::RunMode::kStatic;
  const harness::RunReport rs = harness::run_scenario(scn, opts, nullptr);
  opts.mode = harness::RunMode::kControlled;
  const harness::RunReport rc = harness::run_scenario(scn, opts, &policy);

  harness::emit_compare_outputs(rs, rc, out_dir);
  const harness::Comparison cmp = harness::compare(rs, rc);
  std::printf("NLoS static %.3f s, controlled %.3f s -> reduction %.1f%%\n",
              cmp.nlos_static_s, cmp.nlos_controlled_s,
              cmp.reduction_fraction * 100.0);
  return 0;
}

int cmd_eval_loc(const std::string& scenario_file, std::uint64_t seed,
                 const std::string& out_dir, const std::string& noise_profile) {
  const twin::ScenarioConfig scn = twin::load_scenario(scenario_file);
  const harness::LocalizationStats stats =
      harness::eval_localization(scn, seed, noise_profile == "zero");
  harness::emit_localization_outputs(stats, out_dir);
  std::printf("obstacle estimate over %d frames (%d with estimate):\n",
              stats.frames_total, stats.frames_with_estimate);
  std::printf("  x: gt %.3f mean %.3f [%.3f, %.3f] dev %.3f m\n",
              stats.x.ground_truth, stats.x.mean_est, stats.x.min_est,
              stats.x.max_est, stats.x.mean_dev);
  std::printf("  y: gt %.3f mean %.3f [%.3f, %.3f] dev %.3f m\n",
              stats.y.ground_truth, stats.y.mean_est, stats.y.min_est,
              stats.y.max_est, stats.y.mean_dev);
  return 0;
}

// Re-runs policy inference over a recorded decision log and reports
// mismatches; the rewritten log must be identical for a matching policy.
int cmd_replay(const std::string& log_file, const std::string& policy_file,
               const std::string& out_dir) {
  const dqn::Policy policy = dqn::load_policy(policy_file);

  std::ifstream in(log_file);
  if (!in) {
    std::fprintf(stderr, "cannot open decision log %s\n", log_file.c_str());
    return 2;
  }
  std::string header;
  std::getline(in, header);

  std::vector<xapp::DecisionRow> replayed;
  int mismatches = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) {
      cols.push_back(col);
    }
    if (cols.size() != 1 + kStateDim + kNumActions + 2) {
      std::fprintf(stderr, "bad decision row: %s\n", line.c_str());
      return 2;
    }

    xapp::DecisionRow row;
    row.tick = std::stoull(cols[0]);
    StateVector sv;
    const auto f = [&](int i) { return std::stod(cols[1 + i]); };
    sv.x_gnb = f(0);
    sv.x_gnb_ue = f(1);
    sv.y_gnb_ue = f(2);
    sv.x_gnb_obs = f(3);
    sv.y_gnb_obs = f(4);
    sv.vx_gnb = f(5);
    sv.vx_ue = f(6);
    sv.vy_ue = f(7);
    sv.vx_obs = f(8);
    sv.vy_obs = f(9);
    sv.l_status = static_cast<int>(f(10));
    row.features = sv.as_array();

    row.q = policy.q_values(sv);
    row.action = policy.best_action(sv);
    double v_new = sv.vx_gnb;
    if (row.action == 1) {
      v_new += policy.meta.delta;
    } else if (row.action == 2) {
      v_new -= policy.meta.delta;
    }
    v_new = std::clamp(v_new, -policy.meta.v_max, policy.meta.v_max);
    row.x_target_m = sv.x_gnb + v_new * policy.meta.t_ctrl_s;

    const int logged_action = std::stoi(cols[1 + kStateDim + kNumActions]);
    if (logged_action != row.action) {
      ++mismatches;
    }
    replayed.push_back(row);
  }

  std::filesystem::create_directories(out_dir);
  harness::write_decisions_csv(replayed, std::filesystem::path(out_dir) /
                                             "decisions_replayed.csv");
  std::printf("replayed %zu decisions, %d action mismatches\n", replayed.size(),
              mismatches);
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vision-aided gNB mobility control sandbox"};
  app.require_subcommand(1);

  std::string scenario;
  std::string policy;
  std::string mode = "static";
  std::string out_dir = "out";
  std::string noise_profile = "default";
  std::string log_file;
  std::uint64_t seed = 1;
  int steps = 0;

  auto* train = app.add_subcommand("train", "train a control policy in the twin");
  train->add_option("--scenario", scenario, "scenario JSON")->required();
  train->add_option("--seed", seed, "training seed");
  train->add_option("--out-dir", out_dir, "output directory");
  train->add_option("--steps", steps, "override total environment steps");

  auto* run = app.add_subcommand("run", "run one closed-loop emulation");
  run->add_option("--scenario", scenario, "scenario JSON")->required();
  run->add_option("--mode", mode, "static | controlled")
      ->check(CLI::IsMember({"static", "controlled"}));
  run->add_option("--policy", policy, "policy JSON (controlled mode)");
  run->add_option("--seed", seed, "noise seed");
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--noise-profile", noise_profile, "default | zero")
      ->check(CLI::IsMember({"default", "zero"}));

  auto* cmp = app.add_subcommand("compare", "static vs controlled comparison");
  cmp->add_option("--scenario", scenario, "scenario JSON")->required();
  cmp->add_option("--policy", policy, "policy JSON")->required();
  cmp->add_option("--seed", seed, "noise seed");
  cmp->add_option("--out-dir", out_dir, "output directory");
  cmp->add_option("--noise-profile", noise_profile, "default | zero")
      ->check(CLI::IsMember({"default", "zero"}));

  auto* loc = app.add_subcommand("eval-loc", "localization accuracy evaluation");
  loc->add_option("--scenario", scenario, "scenario JSON")->required();
  loc->add_option("--seed", seed, "noise seed");
  loc->add_option("--out-dir", out_dir, "output directory");
  loc->add_option("--noise-profile", noise_profile, "default | zero")
      ->check(CLI::IsMember({"default", "zero"}));

  auto* replay = app.add_subcommand("replay", "re-run inference over a decision log");
  replay->add_option("--log", log_file, "decisions CSV")->required();
  replay->add_option("--policy", policy, "policy JSON")->required();
  replay->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      return cmd_train(scenario, seed, out_dir, steps);
    }
    if (run->parsed()) {
      return cmd_run(scenario, mode, policy, seed, out_dir, noise_profile);
    }
    if (cmp->parsed()) {
      return cmd_compare(scenario, policy, seed, out_dir, noise_profile);
    }
    if (loc->parsed()) {
      return cmd_eval_loc(scenario, seed, out_dir, noise_profile);
    }
    if (replay->parsed()) {
      return cmd_replay(log_file, policy, out_dir);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

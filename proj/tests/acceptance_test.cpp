// Acceptance suite: runs every top-level requirement at its stated tolerance
// and prints one PASS/FAIL line per criterion. Invoked by ctest with the CLI
// binary path as argv[1]; working directory is the repo root.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vric/dqn/loss.hpp"
#include "vric/dqn/adam.hpp"
#include "vric/dqn/policy.hpp"
#include "vric/dqn/replay.hpp"
#include "vric/dqn/trainer.hpp"
#include "vric/entity.hpp"
#include "vric/harness/runner.hpp"
#include "vric/sm/codec.hpp"
#include "vric/twin/env.hpp"
#include "vric/twin/geometry.hpp"
#include "vric/units.hpp"
#include "vric/xapp/controller.hpp"
#include "vric/xapp/estimate.hpp"

using namespace vric;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d — %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  if (!pass) {
    ++g_failures;
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    return "<missing:" + p.string() + ">";
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("vric_accept_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& binary, const std::string& args) {
  const std::string cmd = binary + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

constexpr const char* kScenario = "scenarios/paper_v.json";
constexpr const char* kShippedPolicy = "policies/paper_policy.json";

// --------------------------------------------------------------------------
// 1. NLoS reduction with the shipped policy
// --------------------------------------------------------------------------
void criterion_1_nlos_reduction(const twin::ScenarioConfig& scn,
                                const dqn::Policy& policy) {
  harness::RunOptions opts;
  opts.seed = 1;

  opts.mode = harness::RunMode::kStatic;
  auto t0 = Clock::now();
  const harness::RunReport rs = harness::run_scenario(scn, opts, nullptr);
  const double static_s = seconds_since(t0);

  opts.mode = harness::RunMode::kControlled;
  t0 = Clock::now();
  const harness::RunReport rc = harness::run_scenario(scn, opts, &policy);
  const double ctrl_s = seconds_since(t0);

  const harness::Comparison cmp = harness::compare(rs, rc);
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "NLoS reduction %.1f%% (static %.2f s -> controlled %.2f s); "
                "wall-clock %.2f s / %.2f s per run (limit 10 s), target >= 60%%",
                cmp.reduction_fraction * 100.0, cmp.nlos_static_s,
                cmp.nlos_controlled_s, static_s, ctrl_s);
  report(1,
         cmp.reduction_fraction >= 0.60 && static_s <= 10.0 && ctrl_s <= 10.0,
         detail);
}

// --------------------------------------------------------------------------
// 2. Localization accuracy
// --------------------------------------------------------------------------
void criterion_2_localization(const twin::ScenarioConfig& scn) {
  const harness::LocalizationStats zero =
      harness::eval_localization(scn, 1, /*zero_noise=*/true);
  const harness::LocalizationStats noisy =
      harness::eval_localization(scn, 1, /*zero_noise=*/false);

  const bool ordering_ok =
      zero.x.min_est <= zero.x.mean_est && zero.x.mean_est <= zero.x.max_est &&
      zero.y.min_est <= zero.y.mean_est && zero.y.mean_est <= zero.y.max_est &&
      noisy.x.min_est <= noisy.x.mean_est && noisy.x.mean_est <= noisy.x.max_est &&
      noisy.y.min_est <= noisy.y.mean_est && noisy.y.mean_est <= noisy.y.max_est;

  const bool pass = zero.x.mean_dev <= 0.01 && zero.y.mean_dev <= 0.01 &&
                    noisy.x.mean_dev <= 0.15 && noisy.y.mean_dev <= 0.15 &&
                    zero.frames_total == 300 && ordering_ok;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "zero-noise dev (%.4f, %.4f) m <= 0.01; calibrated dev "
                "(%.4f, %.4f) m <= 0.15; %d frames; min<=mean<=max %s",
                zero.x.mean_dev, zero.y.mean_dev, noisy.x.mean_dev,
                noisy.y.mean_dev, zero.frames_total, ordering_ok ? "ok" : "BROKEN");
  report(2, pass, detail);
}

// --------------------------------------------------------------------------
// 3. Path-loss model exactness
// --------------------------------------------------------------------------
void criterion_3_path_loss(const twin::ScenarioConfig& scn) {
  twin::LinkModel link = scn.link;  // A_obs = 25 dB in the shipped scenario
  const bool exact_45 = twin::path_loss_db(10.0, 1, link) == 45.0;

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.05, 12.0);
  int offset_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const double d = dist(rng);
    if (twin::path_loss_db(d, 1, link) - twin::path_loss_db(d, 0, link) !=
        link.a_obs_db) {
      ++offset_failures;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "PL(10,1)=45 dB %s; PL(d,1)-PL(d,0)==25 exact on 1000 draws "
                "(%d failures)",
                exact_45 ? "exact" : "WRONG", offset_failures);
  report(3, exact_45 && offset_failures == 0, detail);
}

// --------------------------------------------------------------------------
// 4. Control formula
// --------------------------------------------------------------------------
void criterion_4_control_formula(const twin::ScenarioConfig& scn,
                                 const dqn::Policy& policy) {
  xapp::VisionController ctl(xapp::controller_config_from(scn), policy);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(0.0, 8.0);
  std::uniform_real_distribution<double> rel(-8.0, 8.0);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);

  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    StateVector sv;
    sv.x_gnb = x(rng);
    sv.x_gnb_ue = rel(rng);
    sv.y_gnb_ue = rel(rng);
    sv.x_gnb_obs = rel(rng);
    sv.y_gnb_obs = rel(rng);
    sv.vx_gnb = vel(rng);
    sv.vx_ue = vel(rng);
    sv.vy_ue = vel(rng);
    sv.vx_obs = vel(rng);
    sv.vy_obs = vel(rng);
    sv.l_status = i % 2;

    const sm::PosControl out = ctl.decide_and_control(sv);
    const auto q = policy.q_values(sv);
    int a = 0;
    for (int k = 1; k < kNumActions; ++k) {
      if (q[k] > q[a]) {
        a = k;
      }
    }
    double v_new =
        sv.vx_gnb + (a == 1 ? scn.control.delta : a == 2 ? -scn.control.delta : 0.0);
    v_new = std::clamp(v_new, -scn.control.v_max, scn.control.v_max);
    const double want = sv.x_gnb + v_new * scn.control.t_ctrl_s;
    if (out.x != meters_to_cm(want) ||
        std::abs(cm_to_meters(out.x) - want) > 0.01) {
      ++failures;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "x_target = x_gnb + v_new*T_ctrl within 1 cm for 3 actions x "
                "1000 random states (%d failures)",
                failures);
  report(4, failures == 0, detail);
}

// --------------------------------------------------------------------------
// 5. Protocol conformance
// --------------------------------------------------------------------------
void criterion_5_protocol() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int32_t> i32(
      std::numeric_limits<std::int32_t>::min(),
      std::numeric_limits<std::int32_t>::max());
  std::uniform_int_distribution<std::int32_t> i16(
      std::numeric_limits<std::int16_t>::min(),
      std::numeric_limits<std::int16_t>::max());
  std::uniform_int_distribution<std::int32_t> pos32(1, std::numeric_limits<std::int32_t>::max());
  std::uniform_int_distribution<std::int32_t> theta(-sm::kThetaMaxCentirad,
                                                    sm::kThetaMaxCentirad);
  std::uniform_int_distribution<std::int32_t> phi(-sm::kPhiMaxCentirad,
                                                  sm::kPhiMaxCentirad);
  std::uniform_int_distribution<std::int64_t> i64(
      std::numeric_limits<std::int64_t>::min(),
      std::numeric_limits<std::int64_t>::max());
  std::uniform_int_distribution<int> len(0, 3);

  auto rand_pos_entry = [&] {
    sm::PosDataEntry e;
    e.id = static_cast<std::int16_t>(i16(rng));
    e.x = i32(rng);
    e.y = i32(rng);
    e.z = i32(rng);
    e.vx = i32(rng);
    e.vy = i32(rng);
    e.vz = i32(rng);
    e.theta = theta(rng);
    e.phi = phi(rng);
    return e;
  };
  auto rand_vis_entry = [&] {
    sm::VisDataEntry e;
    e.id = static_cast<std::int16_t>(i16(rng));
    e.cls = i32(rng);
    e.bbx = i32(rng);
    e.bby = i32(rng);
    e.bbw = pos32(rng);
    e.bbh = pos32(rng);
    e.theta = theta(rng);
    e.phi = phi(rng);
    e.r = pos32(rng);
    return e;
  };

  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto pe = rand_pos_entry();
    if (sm::decode_pos_entry(sm::encode_pos_entry(pe)) != pe) {
      ++failures;
    }
    const auto ve = rand_vis_entry();
    if (sm::decode_vis_entry(sm::encode_vis_entry(ve)) != ve) {
      ++failures;
    }
    sm::PosIndication pi;
    for (int k = len(rng); k > 0; --k) {
      pi.pos_stats.push_back(rand_pos_entry());
    }
    pi.len = static_cast<std::uint32_t>(pi.pos_stats.size());
    pi.tstamp = i64(rng);
    if (sm::decode_pos_indication(sm::encode_pos_indication(pi)) != pi) {
      ++failures;
    }
    sm::VisIndication vi;
    for (int k = len(rng); k > 0; --k) {
      vi.vis_stats.push_back(rand_vis_entry());
    }
    vi.len = static_cast<std::uint32_t>(vi.vis_stats.size());
    vi.tstamp = i64(rng);
    if (sm::decode_vis_indication(sm::encode_vis_indication(vi)) != vi) {
      ++failures;
    }
    const sm::PosControl pc{i32(rng), i32(rng), i32(rng), i64(rng)};
    if (sm::decode_pos_control(sm::encode_pos_control(pc)) != pc) {
      ++failures;
    }
  }

  // Golden files stay byte-stable.
  int golden_failures = 0;
  if (sm::encode_pos_indication(sm::PosIndication{}) !=
      slurp("testdata/sm/pos_indication_empty.json")) {
    ++golden_failures;
  }
  sm::PosControl ctl{110, 0, 150, 200000};
  if (sm::encode_pos_control(ctl) != slurp("testdata/sm/pos_control_sample.json")) {
    ++golden_failures;
  }

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "10^4-case round-trip over 5 message types (%d failures); "
                "golden files byte-stable (%d mismatches)",
                failures, golden_failures);
  report(5, failures == 0 && golden_failures == 0, detail);
}

// --------------------------------------------------------------------------
// 6. Geometry oracles
// --------------------------------------------------------------------------
bool oracle_hit(const Vec2& a, const Vec2& b, const Vec2& lo, const Vec2& hi) {
  auto inside = [&](double t) {
    const double x = a.x + (b.x - a.x) * t;
    const double y = a.y + (b.y - a.y) * t;
    return x >= lo.x && x <= hi.x && y >= lo.y && y <= hi.y;
  };
  for (int i = 0; i <= 10000; ++i) {
    if (inside(i / 10000.0)) {
      return true;
    }
  }
  std::vector<double> ts = {0.0, 1.0};
  auto add = [&](double s, double d, double bound) {
    if (d != 0.0) {
      const double t = (bound - s) / d;
      if (t >= 0.0 && t <= 1.0) {
        ts.push_back(t);
      }
    }
  };
  add(a.x, b.x - a.x, lo.x);
  add(a.x, b.x - a.x, hi.x);
  add(a.y, b.y - a.y, lo.y);
  add(a.y, b.y - a.y, hi.y);
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (inside(ts[i])) {
      return true;
    }
    if (i + 1 < ts.size() && inside((ts[i] + ts[i + 1]) / 2.0)) {
      return true;
    }
  }
  return false;
}

void criterion_6_geometry() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> extent(0.05, 2.0);
  const double band = 1e-6;

  int disagreements = 0;
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 a{coord(rng), coord(rng)};
    const Vec2 b{coord(rng), coord(rng)};
    twin::ObstacleBox obs;
    obs.center = {coord(rng), coord(rng)};
    obs.half_extents = {extent(rng), extent(rng)};
    obs.height = 3.0;
    const Vec2 lo = obs.lo();
    const Vec2 hi = obs.hi();
    const bool inflated =
        oracle_hit(a, b, {lo.x - band, lo.y - band}, {hi.x + band, hi.y + band});
    const bool deflated =
        oracle_hit(a, b, {lo.x + band, lo.y + band}, {hi.x - band, hi.y - band});
    if (inflated != deflated) {
      continue;  // within the 1e-6 tangency band
    }
    ++tested;
    if (twin::compute_los({a.x, a.y, 1}, {b.x, b.y, 1}, obs) !=
        (inflated ? 1 : 0)) {
      ++disagreements;
    }
  }

  // estimate_position against a generic homogeneous-transform evaluation.
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  std::uniform_real_distribution<double> azimuth(-3.14, 3.14);
  std::uniform_real_distribution<double> radius(0.1, 20.0);
  double max_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 cam{coord(rng), coord(rng), coord(rng)};
    const double tb = angle(rng);
    const double pb = azimuth(rng);
    const double r = radius(rng);
    const double th = angle(rng);
    const double ph = azimuth(rng);

    const Vec3 got = xapp::polar_to_global(cam, tb, pb, r, th, ph);
    // Oracle: compose Rz and Ry numerically as 3x3 products.
    const double rz[3][3] = {{std::cos(pb), -std::sin(pb), 0},
                             {std::sin(pb), std::cos(pb), 0},
                             {0, 0, 1}};
    const double ry[3][3] = {{std::cos(tb), 0, std::sin(tb)},
                             {0, 1, 0},
                             {-std::sin(tb), 0, std::cos(tb)}};
    double rot[3][3] = {};
    for (int r1 = 0; r1 < 3; ++r1) {
      for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 3; ++k) {
          rot[r1][c] += rz[r1][k] * ry[k][c];
        }
      }
    }
    const double v[3] = {r * std::cos(th) * std::cos(ph),
                         r * std::cos(th) * std::sin(ph), r * std::sin(th)};
    const double want[3] = {
        cam.x + rot[0][0] * v[0] + rot[0][1] * v[1] + rot[0][2] * v[2],
        cam.y + rot[1][0] * v[0] + rot[1][1] * v[1] + rot[1][2] * v[2],
        cam.z + rot[2][0] * v[0] + rot[2][1] * v[1] + rot[2][2] * v[2]};
    max_err = std::max({max_err, std::abs(got.x - want[0]),
                        std::abs(got.y - want[1]), std::abs(got.z - want[2])});
  }

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "compute_los vs sampling oracle: %d/%d disagreements outside "
                "the 1e-6 band; transform oracle max err %.2e m (limit 1e-9)",
                disagreements, tested, max_err);
  report(6, disagreements == 0 && max_err < 1e-9 && tested >= 900, detail);
}

// --------------------------------------------------------------------------
// 7. Learning correctness
// --------------------------------------------------------------------------
void criterion_7_learning(const twin::ScenarioConfig& scn) {
  // 7a. finite-difference gradient check
  std::mt19937_64 rng(7);
  const std::size_t dims[] = {11, 8, 3};
  dqn::QNetwork net = dqn::QNetwork::he_init(dims, rng);
  const dqn::QNetwork target = dqn::QNetwork::he_init(dims, rng);
  std::vector<dqn::Transition> batch(16);
  std::uniform_real_distribution<double> sdist(-1.0, 1.0);
  std::uniform_int_distribution<int> adist(0, 2);
  for (auto& t : batch) {
    for (auto& v : t.state) {
      v = sdist(rng);
    }
    for (auto& v : t.next_state) {
      v = sdist(rng);
    }
    t.action = adist(rng);
    t.reward = sdist(rng);
    t.done = adist(rng) == 0;
  }
  const dqn::TdLoss analytic = dqn::td_loss(net, target, batch, 0.99);
  const double h = 1e-5;
  int grad_failures = 0;
  std::uniform_int_distribution<std::size_t> layer_pick(0, net.layers().size() - 1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = layer_pick(rng);
    auto& layer = net.layers()[k];
    const bool in_bias = adist(rng) == 0;
    auto& params = in_bias ? layer.b : layer.w;
    std::uniform_int_distribution<std::size_t> pick(0, params.size() - 1);
    const std::size_t idx = pick(rng);
    const double saved = params[idx];
    params[idx] = saved + h;
    const double up = dqn::td_loss_value(net, target, batch, 0.99);
    params[idx] = saved - h;
    const double down = dqn::td_loss_value(net, target, batch, 0.99);
    params[idx] = saved;
    const double fd = (up - down) / (2 * h);
    const double an = in_bias ? analytic.grads.db[k][idx] : analytic.grads.dw[k][idx];
    const double denom = std::max(std::abs(fd), std::abs(an));
    if (denom > 1e-10 && std::abs(fd - an) / denom >= 1e-4) {
      ++grad_failures;
    }
  }

  // 7b. single-state sanity MDP converges to the rewarded action
  dqn::QNetwork mdp_net = dqn::QNetwork::he_init(dims, rng);
  dqn::QNetwork mdp_target = mdp_net;
  dqn::AdamOptimizer opt(mdp_net, 5e-3);
  dqn::ReplayBuffer buf(1024);
  std::vector<dqn::Transition> mdp_batch;
  for (int update = 0; update < 500; ++update) {
    dqn::Transition t;
    t.action = adist(rng);
    t.reward = t.action == 1 ? 1.0 : 0.0;
    t.done = false;
    buf.push(t);
    buf.sample(rng, 32, mdp_batch);
    opt.apply(mdp_net, dqn::td_loss(mdp_net, mdp_target, mdp_batch, 0.9).grads);
    if (update % 50 == 0) {
      mdp_target = mdp_net;
    }
  }
  const std::vector<double> zero_state(11, 0.0);
  const auto q = mdp_net.forward_one(zero_state);
  const bool mdp_ok = q[1] > q[0] && q[1] > q[2];

  // 7c. full training run within budget; its policy must satisfy criterion 1
  dqn::TrainConfig cfg;  // defaults are the shipped-policy configuration
  cfg.seed = 7;
  dqn::PolicyMeta meta;
  meta.delta = scn.control.delta;
  meta.v_max = scn.control.v_max;
  meta.t_ctrl_s = scn.control.t_ctrl_s;

  const auto t0 = Clock::now();
  const dqn::TrainResult fresh = dqn::train(
      dqn::training_env_factory(scn), dqn::make_normalization(scn), meta, cfg);
  const double train_s = seconds_since(t0);

  harness::RunOptions opts;
  opts.seed = 1;
  opts.mode = harness::RunMode::kStatic;
  const harness::RunReport rs = harness::run_scenario(scn, opts, nullptr);
  opts.mode = harness::RunMode::kControlled;
  const harness::RunReport rc = harness::run_scenario(scn, opts, &fresh.policy);
  const harness::Comparison cmp = harness::compare(rs, rc);

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "gradient check %d/100 failures; sanity MDP greedy==1 %s; "
                "training %.0f s (limit 900 s), fresh-policy reduction %.1f%% "
                "(target >= 60%%)",
                grad_failures, mdp_ok ? "ok" : "FAILED", train_s,
                cmp.reduction_fraction * 100.0);
  report(7,
         grad_failures == 0 && mdp_ok && train_s <= 900.0 &&
             cmp.reduction_fraction >= 0.60,
         detail);
}

// --------------------------------------------------------------------------
// 8. CLI determinism
// --------------------------------------------------------------------------
void criterion_8_determinism(const std::string& binary) {
  const auto dir_a = fresh_dir("8a");
  const auto dir_b = fresh_dir("8b");

  struct Invocation {
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Invocation> invocations = {
      {std::string("run --scenario ") + kScenario +
           " --mode controlled --policy " + kShippedPolicy + " --seed 5",
       {"run_controlled.csv", "decisions_controlled.csv", "report.json"}},
      {std::string("eval-loc --scenario ") + kScenario + " --seed 9",
       {"localization.csv", "report.json"}},
      {std::string("compare --scenario ") + kScenario + " --policy " +
           kShippedPolicy + " --seed 5",
       {"compare.csv", "run_static.csv", "run_controlled.csv", "report.json"}},
      {std::string("train --scenario ") + kScenario + " --seed 11 --steps 1500",
       {"train_log.csv", "policy.json"}},
  };

  int mismatches = 0;
  int cli_failures = 0;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    const auto out_a = dir_a / std::to_string(i);
    const auto out_b = dir_b / std::to_string(i);
    const std::string args_a = invocations[i].args + " --out-dir " + out_a.string();
    const std::string args_b = invocations[i].args + " --out-dir " + out_b.string();
    if (run_cli(binary, args_a) != 0 || run_cli(binary, args_b) != 0) {
      ++cli_failures;
      continue;
    }
    for (const std::string& name : invocations[i].outputs) {
      if (slurp(out_a / name) != slurp(out_b / name)) {
        ++mismatches;
      }
    }
  }

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "double-invocation byte comparison over run/eval-loc/compare/"
                "train outputs: %d mismatching files, %d CLI failures",
                mismatches, cli_failures);
  report(8, mismatches == 0 && cli_failures == 0, detail);
}

// --------------------------------------------------------------------------
// Substitute trend check for the non-reproducible absolute SNR/throughput
// --------------------------------------------------------------------------
void trend_check(const twin::ScenarioConfig& scn, const dqn::Policy& policy) {
  harness::RunOptions opts;
  opts.seed = 1;
  opts.mode = harness::RunMode::kStatic;
  const harness::RunReport rs = harness::run_scenario(scn, opts, nullptr);
  opts.mode = harness::RunMode::kControlled;
  const harness::RunReport rc = harness::run_scenario(scn, opts, &policy);

  const bool thr_ok = rc.mean_thr_bps > rs.mean_thr_bps;

  // SNR must drop by exactly A_obs across the LoS->NLoS boundary at equal
  // distance; verified via the per-row identity snr = tx - pl - noise with
  // pl(d,1) - pl(d,0) == A_obs exact.
  int snr_failures = 0;
  for (const harness::TickRow& row : rs.rows) {
    const Vec3 gnb{row.gnb_x, scn.gnb_start.y, scn.gnb_start.z};
    const Vec3 ue{row.ue_x, row.ue_y, scn.ue_z};
    const double d = distance(gnb, ue);
    const double pl0 = twin::path_loss_db(d, 0, scn.link);
    const double pl1 = twin::path_loss_db(d, 1, scn.link);
    if (pl1 - pl0 != scn.link.a_obs_db) {
      ++snr_failures;
    }
    const double want_pl = row.l_status ? pl1 : pl0;
    if (row.pl_db != want_pl) {
      ++snr_failures;
    }
    if (row.snr_db != scn.link.tx_dbm - want_pl - scn.link.noise_floor_dbm) {
      ++snr_failures;
    }
  }

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "trend: mean throughput controlled %.3g > static %.3g %s; "
                "NLoS SNR offset exactly A_obs on all %zu ticks (%d failures)",
                rc.mean_thr_bps, rs.mean_thr_bps, thr_ok ? "ok" : "VIOLATED",
                rs.rows.size(), snr_failures);
  report(9, thr_ok && snr_failures == 0, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_test <path-to-vric-binary>\n");
    return 2;
  }
  const std::string binary = argv[1];

  twin::ScenarioConfig scn;
  dqn::Policy policy;
  try {
    scn = twin::load_scenario(kScenario);
    policy = dqn::load_policy(kShippedPolicy);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "setup failed: %s\n", e.what());
    return 2;
  }

  criterion_1_nlos_reduction(scn, policy);
  criterion_2_localization(scn);
  criterion_3_path_loss(scn);
  criterion_4_control_formula(scn, policy);
  criterion_5_protocol();
  criterion_6_geometry();
  criterion_7_learning(scn);
  criterion_8_determinism(binary);
  trend_check(scn, policy);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}

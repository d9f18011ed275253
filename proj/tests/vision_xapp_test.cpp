#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "vric/entity.hpp"
#include "vric/sm/bus.hpp"
#include "vric/sm/codec.hpp"
#include "vric/twin/scenario.hpp"
#include "vric/units.hpp"
#include "vric/xapp/controller.hpp"
#include "vric/xapp/estimate.hpp"
#include "vric/xapp/tracker.hpp"

using namespace vric;
using namespace vric::xapp;

namespace {

twin::ScenarioConfig paper_scenario() {
  return twin::load_scenario("scenarios/paper_v.json");
}

// Policy whose Q-values are just the output biases: argmax is b's argmax.
dqn::Policy bias_policy(const twin::ScenarioConfig& scn, double b0, double b1,
                        double b2) {
  dqn::Policy p;
  const std::size_t dims[] = {static_cast<std::size_t>(kStateDim),
                              static_cast<std::size_t>(kNumActions)};
  p.net = dqn::QNetwork::zeros(dims);
  p.net.layers()[0].b = {b0, b1, b2};
  p.norm = dqn::make_normalization(scn);
  p.meta.delta = scn.control.delta;
  p.meta.v_max = scn.control.v_max;
  p.meta.t_ctrl_s = scn.control.t_ctrl_s;
  return p;
}

// 4x4 homogeneous-transform oracle for polar_to_global built from generic
// matrix products (independent of the direct rotation formula).
Vec3 transform_oracle(const Vec3& cam, double tb, double pb, double r,
                      double theta, double phi) {
  using Mat4 = std::array<std::array<double, 4>, 4>;
  auto identity = [] {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
      m[i][i] = 1.0;
    }
    return m;
  };
  auto mul = [](const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
          acc += a[i][k] * b[k][j];
        }
        c[i][j] = acc;
      }
    }
    return c;
  };
  Mat4 translate = identity();
  translate[0][3] = cam.x;
  translate[1][3] = cam.y;
  translate[2][3] = cam.z;
  Mat4 rz = identity();
  rz[0][0] = std::cos(pb);
  rz[0][1] = -std::sin(pb);
  rz[1][0] = std::sin(pb);
  rz[1][1] = std::cos(pb);
  Mat4 ry = identity();
  ry[0][0] = std::cos(-tb);
  ry[0][2] = std::sin(-tb);
  ry[2][0] = -std::sin(-tb);
  ry[2][2] = std::cos(-tb);

  const Mat4 m = mul(translate, mul(rz, ry));
  const double v[4] = {r * std::cos(theta) * std::cos(phi),
                       r * std::cos(theta) * std::sin(phi), r * std::sin(theta),
                       1.0};
  Vec3 out;
  out.x = m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2] + m[0][3] * v[3];
  out.y = m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2] + m[1][3] * v[3];
  out.z = m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2] + m[2][3] * v[3];
  return out;
}

sm::BusEnvelope pos_env(const char* sender, std::vector<sm::PosDataEntry> entries,
                        std::uint64_t tick) {
  sm::PosIndication ind;
  ind.pos_stats = std::move(entries);
  ind.len = static_cast<std::uint32_t>(ind.pos_stats.size());
  ind.tstamp = static_cast<std::int64_t>(tick) * 83333;
  return {sender, sm::MsgKind::kPosIndication, sm::encode_pos_indication(ind),
          tick};
}

sm::BusEnvelope vis_env(const char* sender, std::vector<sm::VisDataEntry> entries,
                        std::uint64_t tick) {
  sm::VisIndication ind;
  ind.vis_stats = std::move(entries);
  ind.len = static_cast<std::uint32_t>(ind.vis_stats.size());
  ind.tstamp = static_cast<std::int64_t>(tick) * 83333;
  return {sender, sm::MsgKind::kVisIndication, sm::encode_vis_indication(ind),
          tick};
}

// Detection with given polar coordinates (quantized) and dummy bbox.
sm::VisDataEntry det(std::int32_t cls, std::int32_t r, std::int32_t theta,
                     std::int32_t phi) {
  sm::VisDataEntry e;
  e.id = cls == kClsPersonUe ? kUeId : kObstacleId;
  e.cls = cls;
  e.bbx = 320;
  e.bby = 240;
  e.bbw = 10;
  e.bbh = 20;
  e.r = r;
  e.theta = theta;
  e.phi = phi;
  return e;
}

sm::PosDataEntry cam_entry(std::int16_t id, std::int32_t x, std::int32_t y,
                           std::int32_t z, std::int32_t theta, std::int32_t phi) {
  sm::PosDataEntry e;
  e.id = id;
  e.x = x;
  e.y = y;
  e.z = z;
  e.theta = theta;
  e.phi = phi;
  return e;
}

}  // namespace

// ============================================================================
// geometric estimation
// ============================================================================

TEST_CASE("camera at origin looking +x, detection dead ahead") {
  const Vec3 p = estimate_position(cam_entry(kRefCamId, 0, 0, 0, 0, 0),
                                   det(kClsPersonUe, 500, 0, 0));
  CHECK(p.x == doctest::Approx(5.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(p.z == doctest::Approx(0.0));
}

TEST_CASE("quarter-turn azimuth lands on the +y axis within quantization") {
  const Vec3 p = estimate_position(cam_entry(kRefCamId, 0, 0, 0, 0, 0),
                                   det(kClsPersonUe, 500, 0, 157));
  CHECK(std::abs(p.x) < 0.05);
  CHECK(p.y == doctest::Approx(5.0).epsilon(0.01));
  CHECK(p.z == doctest::Approx(0.0));
}

TEST_CASE("polar_to_global matches the homogeneous-transform oracle to 1e-9") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> tb(-1.5, 1.5);
  std::uniform_real_distribution<double> pb(-3.14, 3.14);
  std::uniform_real_distribution<double> rr(0.1, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 cam{pos(rng), pos(rng), pos(rng)};
    const double boresight_theta = tb(rng);
    const double boresight_phi = pb(rng);
    const double r = rr(rng);
    const double theta = tb(rng);
    const double phi = pb(rng);
    const Vec3 got =
        polar_to_global(cam, boresight_theta, boresight_phi, r, theta, phi);
    const Vec3 want =
        transform_oracle(cam, boresight_theta, boresight_phi, r, theta, phi);
    CHECK(std::abs(got.x - want.x) < 1e-9);
    CHECK(std::abs(got.y - want.y) < 1e-9);
    CHECK(std::abs(got.z - want.z) < 1e-9);
  }
}

// ============================================================================
// fusion and tracking
// ============================================================================

TEST_CASE("fuse of a single estimate is the identity") {
  const Vec3 e{1.0, 2.0, 3.0};
  CHECK(fuse(std::span<const Vec3>(&e, 1)) == e);
}

TEST_CASE("fuse averages component-wise") {
  const Vec3 es[] = {{4.0, 5.5, 0.0}, {3.9, 5.7, 0.0}};
  const Vec3 f = fuse(es);
  CHECK(f.x == doctest::Approx(3.95));
  CHECK(f.y == doctest::Approx(5.60));
}

TEST_CASE("fuse of nothing throws") {
  CHECK_THROWS_AS((void)fuse({}), NoEstimateEver);
}

TEST_CASE("tracker coasts on an empty update and keeps the last position") {
  Tracker tracker(0.5, 12, 12.0);
  const Vec3 e{2.0, 3.0, 0.0};
  tracker.update(kUeId, std::span<const Vec3>(&e, 1), 0);
  tracker.update(kUeId, {}, 1);
  const TrackedEntity& t = tracker.get(kUeId);
  CHECK(t.coasting);
  CHECK(t.position == e);
}

TEST_CASE("unseen entities throw NoEstimateEver") {
  Tracker tracker(0.5, 12, 12.0);
  CHECK_THROWS_AS((void)tracker.get(kUeId), NoEstimateEver);
}

TEST_CASE("velocity: stationary entity reports zero") {
  Tracker tracker(0.5, 12, 12.0);
  const Vec3 e{2.0, 3.0, 0.0};
  for (std::uint64_t tick = 0; tick < 10; ++tick) {
    tracker.update(kUeId, std::span<const Vec3>(&e, 1), tick);
  }
  CHECK(tracker.get(kUeId).velocity.x == 0.0);
  CHECK(tracker.get(kUeId).velocity.y == 0.0);
}

TEST_CASE("velocity: 0.2 m over 0.2 s with alpha=1 gives 1 m/s") {
  Tracker tracker(1.0, 12, 5.0);  // 5 fps -> one tick = 0.2 s
  const Vec3 a{1.0, 0.0, 0.0};
  const Vec3 b{1.2, 0.0, 0.0};
  tracker.update(kUeId, std::span<const Vec3>(&a, 1), 0);
  tracker.update(kUeId, std::span<const Vec3>(&b, 1), 1);
  CHECK(tracker.get(kUeId).velocity.x == doctest::Approx(1.0));
}

TEST_CASE("EMA velocity is less noisy than raw frame differences") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> noise(0.0, 0.05);
  Tracker tracker(0.5, 1000, 12.0);

  std::vector<double> raw;
  std::vector<double> ema;
  double prev = -1.0;
  bool have_prev = false;
  for (std::uint64_t tick = 0; tick < 1000; ++tick) {
    const Vec3 e{3.0 + noise(rng), 2.0, 0.0};  // static entity, noisy estimate
    if (have_prev) {
      raw.push_back((e.x - prev) * 12.0);
    }
    prev = e.x;
    have_prev = true;
    tracker.update(kUeId, std::span<const Vec3>(&e, 1), tick);
    ema.push_back(tracker.get(kUeId).velocity.x);
  }
  auto variance = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) {
      mean += x;
    }
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) {
      var += (x - mean) * (x - mean);
    }
    return var / (xs.size() - 1);
  };
  CHECK(variance(ema) < variance(raw));
}

TEST_CASE("stale tracks freeze velocity to zero") {
  Tracker tracker(1.0, 3, 12.0);
  const Vec3 a{1.0, 0.0, 0.0};
  const Vec3 b{1.5, 0.0, 0.0};
  tracker.update(kUeId, std::span<const Vec3>(&a, 1), 0);
  tracker.update(kUeId, std::span<const Vec3>(&b, 1), 1);
  CHECK(tracker.get(kUeId).velocity.x > 0.0);
  tracker.coast(kUeId, 2);
  CHECK(tracker.get(kUeId).velocity.x > 0.0);  // within timeout, keeps velocity
  tracker.coast(kUeId, 10);
  CHECK(tracker.get(kUeId).velocity.x == 0.0);
  CHECK(tracker.get(kUeId).position == b);
}

// ============================================================================
// controller pipeline
// ============================================================================

TEST_CASE("build_state computes relative positions and uses inferred LoS") {
  const twin::ScenarioConfig scn = paper_scenario();
  VisionController ctl(controller_config_from(scn), std::nullopt);
  sm::MessageBus bus;
  bus.add_subscriber(kXappAgent);

  // Camera at the origin looking +x; UE 5 m ahead at (5, 0); obstacle at
  // (4, 5) via a second detection. gNB at (1, 0, 1.5).
  bus.publish(pos_env(kRefCamAgent, {cam_entry(kRefCamId, 0, 0, 150, 0, 0)}, 0));
  bus.publish(vis_env(kRefCamAgent,
                      {det(kClsPersonUe, 640, 0, 90),      // ~ (4.0, 5.0)
                       det(kClsObstacle, 403, 0, 137)},    // ~ (0.8, 3.95)...
                      0));
  bus.publish(pos_env(kGnbAgent, {cam_entry(kGnbId, 100, 0, 150, 0, 0)}, 0));
  ctl.tick(bus, 0);

  const StateVector sv = ctl.build_state();
  CHECK(sv.x_gnb == doctest::Approx(1.0));
  const TrackedEntity& ue = ctl.tracker().get(kUeId);
  CHECK(sv.x_gnb_ue == doctest::Approx(ue.position.x - 1.0));
  CHECK(sv.y_gnb_ue == doctest::Approx(ue.position.y));
  CHECK(sv.vx_gnb == 0.0);
  CHECK(sv.l_status ==
        ctl.infer_los({1.0, 0.0, 1.5}, ue.position,
                      ctl.tracker().get(kObstacleId).position));
}

TEST_CASE("build_state without tracks throws MissingTrack") {
  const twin::ScenarioConfig scn = paper_scenario();
  VisionController ctl(controller_config_from(scn), std::nullopt);
  CHECK_THROWS_AS((void)ctl.build_state(), MissingTrack);
}

TEST_CASE("infer_los on exact ground truth matches compute_los") {
  const twin::ScenarioConfig scn = paper_scenario();
  VisionController ctl(controller_config_from(scn), std::nullopt);
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> x(0.0, 8.0);
  std::uniform_real_distribution<double> y(0.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    const Vec3 gnb{x(rng), 0.0, 1.5};
    const Vec3 ue{x(rng), y(rng), 1.3};
    const Vec3 obs{x(rng), y(rng), 0.0};
    twin::ObstacleBox box;
    box.center = obs.xy();
    box.half_extents = scn.obstacle.half_extents;
    box.height = scn.obstacle.height;
    CHECK(ctl.infer_los(gnb, ue, obs) == twin::compute_los(gnb, ue, box));
  }
}

TEST_CASE("stale camera pose raises StaleCameraPose from the estimate path") {
  const twin::ScenarioConfig scn = paper_scenario();
  VisionController ctl(controller_config_from(scn), std::nullopt);
  sm::MessageBus bus;
  bus.add_subscriber(kXappAgent);
  bus.publish(pos_env(kRefCamAgent, {cam_entry(kRefCamId, 0, 0, 150, 0, 0)}, 0));
  ctl.tick(bus, 0);
  CHECK_THROWS_AS((void)ctl.estimate_from(kRefCamAgent, det(kClsPersonUe, 500, 0, 0), 100),
                  StaleCameraPose);
  CHECK_THROWS_AS((void)ctl.estimate_from("martian", det(kClsPersonUe, 500, 0, 0), 0),
                  StaleCameraPose);
}

TEST_CASE("decide_and_control reproduces the target formula") {
  const twin::ScenarioConfig scn = paper_scenario();

  SUBCASE("action 1 from rest at x = 1.0 m") {
    VisionController ctl(controller_config_from(scn),
                         bias_policy(scn, 0.0, 1.0, 0.0));
    StateVector sv;
    sv.x_gnb = 1.0;
    sv.vx_gnb = 0.0;
    const sm::PosControl out = ctl.decide_and_control(sv);
    CHECK(out.x == 105);  // 1.0 + 0.25*0.2 = 1.05 m
  }
  SUBCASE("action 0 holds the current position at zero velocity") {
    VisionController ctl(controller_config_from(scn),
                         bias_policy(scn, 1.0, 0.0, 0.0));
    StateVector sv;
    sv.x_gnb = 2.5;
    sv.vx_gnb = 0.0;
    CHECK(ctl.decide_and_control(sv).x == 250);
  }
  SUBCASE("acceleration clamps at v_max") {
    VisionController ctl(controller_config_from(scn),
                         bias_policy(scn, 0.0, 1.0, 0.0));
    StateVector sv;
    sv.x_gnb = 2.0;
    sv.vx_gnb = scn.control.v_max;
    CHECK(ctl.decide_and_control(sv).x == 220);  // 2.0 + 1.0*0.2
  }
}

TEST_CASE("control formula holds for all actions over 1e3 random states") {
  const twin::ScenarioConfig scn = paper_scenario();
  std::mt19937_64 net_rng(15);
  const std::size_t dims[] = {11, 16, 3};
  dqn::Policy policy;
  policy.net = dqn::QNetwork::he_init(dims, net_rng);
  policy.norm = dqn::make_normalization(scn);
  policy.meta.delta = scn.control.delta;
  policy.meta.v_max = scn.control.v_max;
  policy.meta.t_ctrl_s = scn.control.t_ctrl_s;
  VisionController ctl(controller_config_from(scn), policy);

  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> x(0.0, 8.0);
  std::uniform_real_distribution<double> rel(-8.0, 8.0);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  std::uniform_int_distribution<int> los(0, 1);

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
    sv.l_status = los(rng);

    const sm::PosControl out = ctl.decide_and_control(sv);

    // Recompute the expected target from the policy's own argmax.
    const auto q = policy.q_values(sv);
    int a = 0;
    for (int k = 1; k < kNumActions; ++k) {
      if (q[k] > q[a]) {
        a = k;
      }
    }
    double v_new = sv.vx_gnb + (a == 1 ? 0.25 : a == 2 ? -0.25 : 0.0);
    v_new = std::clamp(v_new, -1.0, 1.0);
    const double x_target = sv.x_gnb + v_new * 0.2;
    CHECK(out.x == meters_to_cm(x_target));
    CHECK(std::abs(cm_to_meters(out.x) - x_target) <= 0.005 + 1e-12);
    CHECK(std::abs(x_target - sv.x_gnb) <= 1.0 * 0.2 + 1e-12);
  }
}

TEST_CASE("positive scaling of Q-values leaves the greedy action unchanged") {
  const twin::ScenarioConfig scn = paper_scenario();
  std::mt19937_64 net_rng(17);
  const std::size_t dims[] = {11, 16, 3};
  dqn::Policy policy;
  policy.net = dqn::QNetwork::he_init(dims, net_rng);
  policy.norm = dqn::make_normalization(scn);
  dqn::Policy scaled = policy;
  for (double& w : scaled.net.layers().back().w) {
    w *= 7.5;
  }
  for (double& b : scaled.net.layers().back().b) {
    b *= 7.5;
  }

  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> rel(-8.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    StateVector sv;
    sv.x_gnb = rel(rng);
    sv.x_gnb_ue = rel(rng);
    sv.y_gnb_ue = rel(rng);
    sv.x_gnb_obs = rel(rng);
    sv.y_gnb_obs = rel(rng);
    CHECK(policy.best_action(sv) == scaled.best_action(sv));
  }
}

TEST_CASE("exact Q ties resolve to the lowest action index") {
  const twin::ScenarioConfig scn = paper_scenario();
  const dqn::Policy p = bias_policy(scn, 0.5, 0.5, 0.5);
  StateVector sv;
  CHECK(p.best_action(sv) == 0);
  const dqn::Policy p2 = bias_policy(scn, 0.1, 0.9, 0.9);
  CHECK(p2.best_action(sv) == 1);
}

TEST_CASE("no indications ever means no control messages") {
  const twin::ScenarioConfig scn = paper_scenario();
  VisionController ctl(controller_config_from(scn), bias_policy(scn, 0, 0, 0));
  sm::MessageBus bus;
  bus.add_subscriber(kXappAgent);
  bus.add_subscriber(kGnbAgent);
  for (std::uint64_t tick = 0; tick < 10; ++tick) {
    bus.advance_to(tick);
    CHECK_FALSE(ctl.tick(bus, tick).has_value());
  }
  CHECK(bus.poll(kGnbAgent, 10).empty());
  CHECK(ctl.decision_log().empty());
}

TEST_CASE("identical indication logs replay to identical decision logs") {
  const twin::ScenarioConfig scn = paper_scenario();

  auto run = [&] {
    VisionController ctl(controller_config_from(scn),
                         bias_policy(scn, 0.0, 0.3, 0.1));
    sm::MessageBus bus;
    bus.add_subscriber(kXappAgent);
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<std::int32_t> r(100, 900);
    for (std::uint64_t tick = 0; tick < 50; ++tick) {
      bus.advance_to(tick);
      bus.publish(pos_env(kRefCamAgent, {cam_entry(kRefCamId, 0, 0, 150, 0, 0)}, tick));
      bus.publish(pos_env(kGnbAgent, {cam_entry(kGnbId, 400, 0, 150, 0, 0)}, tick));
      bus.publish(vis_env(kRefCamAgent,
                          {det(kClsPersonUe, r(rng), 5, 40),
                           det(kClsObstacle, r(rng), -5, 60)},
                          tick));
      ctl.tick(bus, tick);
    }
    return ctl.decision_log();
  };

  const auto log1 = run();
  const auto log2 = run();
  REQUIRE(log1.size() == log2.size());
  REQUIRE(log1.size() == 50);  // one command per tick once tracks exist
  for (std::size_t i = 0; i < log1.size(); ++i) {
    CHECK(log1[i].features == log2[i].features);
    CHECK(log1[i].q == log2[i].q);
    CHECK(log1[i].action == log2[i].action);
    CHECK(log1[i].x_target_m == log2[i].x_target_m);
  }
}

TEST_CASE("controller refuses a policy trained with different control constants") {
  const twin::ScenarioConfig scn = paper_scenario();
  dqn::Policy p = bias_policy(scn, 0, 0, 0);
  p.meta.delta = 0.5;  // disagrees with the scenario's 0.25
  CHECK_THROWS_AS(VisionController(controller_config_from(scn), p),
                  dqn::SchemaMismatch);
}

#include "vric/harness/runner.hpp"

#include <cmath>

#include "vric/entity.hpp"
#include "vric/harness/svg.hpp"
#include "vric/percept/perception.hpp"
#include "vric/sm/bus.hpp"
#include "vric/sm/codec.hpp"
#include "vric/units.hpp"
#include "vric/xapp/estimate.hpp"
#include "vric/xapp/tracker.hpp"

namespace vric::harness {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over (seed, stream) for independent per-camera noise streams
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

percept::NoiseModel effective_noise(const twin::ScenarioConfig& scn,
                                    bool zero_noise) {
  if (zero_noise) {
    return {};
  }
  return percept::noise_from(scn.noise);
}

std::int64_t frame_time_us(int frame, double fps) {
  return std::llround(frame * 1e6 / fps);
}

}  // namespace

RunReport run_scenario(const twin::ScenarioConfig& scn, const RunOptions& opts,
                       const dqn::Policy* policy) {
  if (opts.mode == RunMode::kControlled && policy == nullptr) {
    throw PolicyLoadError("controlled mode requires a policy");
  }

  twin::World world(scn);
  const double fps = scn.timing.fps;
  const double dt = 1.0 / fps;
  const int frames = scn.frame_count();
  const std::int64_t ctrl_period_us = seconds_to_us(scn.control.t_ctrl_s);
  const std::int64_t xapp_start_us = seconds_to_us(scn.timing.xapp_start_s);
  const percept::NoiseModel noise = effective_noise(scn, opts.zero_noise);

  sm::MessageBus bus;
  bus.add_subscriber(kXappAgent);
  bus.add_subscriber(kGnbAgent);

  struct RefCamera {
    percept::CameraModel model;
    twin::EntityPose pose;
    std::mt19937_64 rng;
  };
  std::vector<RefCamera> ref_cameras;
  for (std::size_t i = 0; i < scn.cameras.size(); ++i) {
    RefCamera cam;
    cam.model = percept::make_camera(scn.cameras[i], fps);
    cam.pose.id = cam.model.id;
    cam.pose.position = cam.model.position;
    cam.pose.boresight_theta = cam.model.theta;
    cam.pose.boresight_phi = cam.model.phi;
    cam.rng.seed(mix_seed(opts.seed, static_cast<std::uint64_t>(cam.model.id)));
    ref_cameras.push_back(std::move(cam));
  }

  percept::CameraModel gnb_cam = percept::make_camera(scn.gnb_camera, fps);
  const Vec3 gnb_cam_offset = scn.gnb_camera.position;  // mount offset
  std::mt19937_64 gnb_rng(
      mix_seed(opts.seed, static_cast<std::uint64_t>(gnb_cam.id)));

  std::optional<xapp::VisionController> controller;
  if (opts.mode == RunMode::kControlled) {
    controller.emplace(xapp::controller_config_from(scn),
                       std::optional<dqn::Policy>(*policy));
  }

  RunReport report;
  report.mode = opts.mode;
  report.seed = opts.seed;

  std::int64_t last_ctrl_index = -1;

  for (int f = 0; f < frames; ++f) {
    const std::uint64_t tick = static_cast<std::uint64_t>(f);
    bus.advance_to(tick);
    const std::int64_t t_us = frame_time_us(f, fps);
    const twin::WorldState& ws = world.state();

    // Reference camera agents: VIS detections plus their own POS entry.
    for (RefCamera& cam : ref_cameras) {
      sm::VisIndication vis = percept::observe(cam.model, ws, noise, cam.rng,
                                               &ws.obstacle, t_us);
      sm::PosIndication pos = percept::report_pose(
          std::span<const twin::EntityPose>(&cam.pose, 1), t_us);
      bus.publish({kRefCamAgent, sm::MsgKind::kVisIndication,
                   sm::encode_vis_indication(vis), tick});
      bus.publish({kRefCamAgent, sm::MsgKind::kPosIndication,
                   sm::encode_pos_indication(pos), tick});
    }

    // gNB agent: onboard camera slaved to the current gNB position.
    gnb_cam.position = ws.gnb.position + gnb_cam_offset;
    auto [gnb_vis, gnb_pos] =
        percept::gnb_viewpoint(ws, gnb_cam, noise, gnb_rng, t_us);
    bus.publish({kGnbAgent, sm::MsgKind::kVisIndication,
                 sm::encode_vis_indication(gnb_vis), tick});
    bus.publish({kGnbAgent, sm::MsgKind::kPosIndication,
                 sm::encode_pos_indication(gnb_pos), tick});

    // Controller fires once per control interval after activation.
    if (controller.has_value() && t_us >= xapp_start_us) {
      const std::int64_t ctrl_index = t_us / ctrl_period_us;
      if (ctrl_index > last_ctrl_index) {
        last_ctrl_index = ctrl_index;
        controller->tick(bus, tick);
      }
    }

    // gNB agent consumes control commands; each one rearms the platform's
    // target and commanded speed.
    for (const sm::BusEnvelope& env : bus.poll(kGnbAgent, tick)) {
      if (env.kind == sm::MsgKind::kPosControl) {
        const sm::PosControl ctl = sm::decode_pos_control(env.payload);
        world.set_gnb_target_x(cm_to_meters(ctl.x));
      }
    }

    // Per-tick metrics from ground truth, before the step.
    TickRow row;
    row.tick = tick;
    row.t_s = us_to_seconds(t_us);
    row.gnb_x = ws.gnb.position.x;
    row.ue_x = ws.ue.position.x;
    row.ue_y = ws.ue.position.y;
    row.l_status = ws.los;
    row.pl_db = twin::path_loss_db(distance(ws.gnb.position, ws.ue.position),
                                   ws.los, scn.link);
    const twin::LinkQuality q = twin::link_quality(row.pl_db, scn.link);
    row.snr_db = q.snr_db;
    row.thr_bps = q.throughput_bps;
    report.rows.push_back(row);

    world.step(dt);
  }

  if (controller.has_value()) {
    report.decisions = controller->decision_log();
  }
  report.finalize(fps);
  return report;
}

// ----------------------------------------------------------------------------
// Localization evaluation (reference cameras only)
// ----------------------------------------------------------------------------

LocalizationStats eval_localization(const twin::ScenarioConfig& scn,
                                    std::uint64_t seed, bool zero_noise) {
  twin::World world(scn);
  const double fps = scn.timing.fps;
  const int frames = scn.frame_count();
  const percept::NoiseModel noise = effective_noise(scn, zero_noise);

  struct RefCamera {
    percept::CameraModel model;
    twin::EntityPose pose;
    std::mt19937_64 rng;
  };
  std::vector<RefCamera> cams;
  for (const twin::CameraSpec& spec : scn.cameras) {
    RefCamera cam;
    cam.model = percept::make_camera(spec, fps);
    cam.pose.id = cam.model.id;
    cam.pose.position = cam.model.position;
    cam.pose.boresight_theta = cam.model.theta;
    cam.pose.boresight_phi = cam.model.phi;
    cam.rng.seed(mix_seed(seed, static_cast<std::uint64_t>(cam.model.id)));
    cams.push_back(std::move(cam));
  }

  LocalizationStats stats;
  stats.frames_total = frames;
  stats.x.ground_truth = scn.obstacle.center.x;
  stats.y.ground_truth = scn.obstacle.center.y;

  double sum_x = 0.0;
  double sum_y = 0.0;
  bool first = true;

  for (int f = 0; f < frames; ++f) {
    const std::int64_t t_us = frame_time_us(f, fps);
    const twin::WorldState& ws = world.state();

    std::vector<Vec3> estimates;
    for (RefCamera& cam : cams) {
      const sm::VisIndication vis = percept::observe(
          cam.model, ws, noise, cam.rng, &ws.obstacle, t_us);
      // The estimates travel the same quantized SM path as the online loop.
      const sm::PosIndication pos = percept::report_pose(
          std::span<const twin::EntityPose>(&cam.pose, 1), t_us);
      for (const sm::VisDataEntry& det : vis.vis_stats) {
        if (det.cls == kClsObstacle) {
          estimates.push_back(xapp::estimate_position(pos.pos_stats[0], det));
        }
      }
    }

    LocalizationRow row;
    row.frame = f;
    row.t_s = us_to_seconds(t_us);
    row.n_sources = static_cast<int>(estimates.size());
    if (!estimates.empty()) {
      const Vec3 fused = xapp::fuse(estimates);
      row.has_estimate = true;
      row.est_x = fused.x;
      row.est_y = fused.y;
      sum_x += fused.x;
      sum_y += fused.y;
      ++stats.frames_with_estimate;
      if (first) {
        stats.x.max_est = stats.x.min_est = fused.x;
        stats.y.max_est = stats.y.min_est = fused.y;
        first = false;
      } else {
        stats.x.max_est = std::max(stats.x.max_est, fused.x);
        stats.x.min_est = std::min(stats.x.min_est, fused.x);
        stats.y.max_est = std::max(stats.y.max_est, fused.y);
        stats.y.min_est = std::min(stats.y.min_est, fused.y);
      }
    }
    stats.rows.push_back(row);

    world.step(1.0 / fps);
  }

  if (stats.frames_with_estimate > 0) {
    // The true mean lies in [min, max]; summation rounding can push the
    // quotient an ulp outside, so clamp to keep the ordering invariant.
    stats.x.mean_est = std::clamp(sum_x / stats.frames_with_estimate,
                                  stats.x.min_est, stats.x.max_est);
    stats.y.mean_est = std::clamp(sum_y / stats.frames_with_estimate,
                                  stats.y.min_est, stats.y.max_est);
    stats.x.mean_dev = std::abs(stats.x.ground_truth - stats.x.mean_est);
    stats.y.mean_dev = std::abs(stats.y.ground_truth - stats.y.mean_est);
  }
  return stats;
}

// ----------------------------------------------------------------------------
// Output emission
// ----------------------------------------------------------------------------

namespace {

std::vector<double> transition_times(const RunReport& r) {
  std::vector<double> t;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (r.rows[i].l_status != r.rows[i - 1].l_status) {
      t.push_back(r.rows[i].t_s);
    }
  }
  return t;
}

}  // namespace

void emit_run_outputs(const RunReport& report,
                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string mode = to_string(report.mode);
  write_run_csv(report, out_dir / ("run_" + mode + ".csv"));
  if (report.mode == RunMode::kControlled) {
    write_decisions_csv(report.decisions,
                        out_dir / ("decisions_" + mode + ".csv"));
  }
  write_text(run_report_json(report), out_dir / "report.json");

  std::vector<double> t;
  SvgPanel pl{"path loss (dB)", {{"pl", "#d62728", {}}}};
  SvgPanel snr{"SNR (dB)", {{"snr", "#1f77b4", {}}}};
  SvgPanel thr{"throughput (bit/s)", {{"thr", "#2ca02c", {}}}};
  for (const TickRow& row : report.rows) {
    t.push_back(row.t_s);
    pl.series[0].values.push_back(row.pl_db);
    snr.series[0].values.push_back(row.snr_db);
    thr.series[0].values.push_back(row.thr_bps);
  }
  write_timeseries_svg(out_dir / ("run_" + mode + ".svg"),
                       "gNB link metrics (" + mode + ")", t, {pl, snr, thr},
                       transition_times(report));
}

void emit_compare_outputs(const RunReport& a_static,
                          const RunReport& b_controlled,
                          const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const Comparison cmp = compare(a_static, b_controlled);

  write_run_csv(a_static, out_dir / "run_static.csv");
  write_run_csv(b_controlled, out_dir / "run_controlled.csv");
  write_decisions_csv(b_controlled.decisions, out_dir / "decisions_controlled.csv");
  write_compare_csv(a_static, b_controlled, out_dir / "compare.csv");
  write_text(compare_report_json(a_static, b_controlled, cmp),
             out_dir / "report.json");

  std::vector<double> t;
  SvgPanel pl{"path loss (dB)",
              {{"static", "#d62728", {}}, {"controlled", "#1f77b4", {}}}};
  SvgPanel snr{"SNR (dB)",
               {{"static", "#d62728", {}}, {"controlled", "#1f77b4", {}}}};
  SvgPanel thr{"throughput (bit/s)",
               {{"static", "#d62728", {}}, {"controlled", "#1f77b4", {}}}};
  for (std::size_t i = 0; i < a_static.rows.size(); ++i) {
    t.push_back(a_static.rows[i].t_s);
    pl.series[0].values.push_back(a_static.rows[i].pl_db);
    pl.series[1].values.push_back(b_controlled.rows[i].pl_db);
    snr.series[0].values.push_back(a_static.rows[i].snr_db);
    snr.series[1].values.push_back(b_controlled.rows[i].snr_db);
    thr.series[0].values.push_back(a_static.rows[i].thr_bps);
    thr.series[1].values.push_back(b_controlled.rows[i].thr_bps);
  }
  write_timeseries_svg(out_dir / "compare.svg", "static vs controlled gNB", t,
                       {pl, snr, thr}, transition_times(b_controlled));
}

void emit_localization_outputs(const LocalizationStats& stats,
                               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_localization_csv(stats, out_dir / "localization.csv");
  write_text(localization_report_json(stats), out_dir / "report.json");
}

}  // namespace vric::harness

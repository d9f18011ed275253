#include "vric/harness/report.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "vric/state_vector.hpp"

namespace vric::harness {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + file.string());
  }
  return out;
}

}  // namespace

const char* to_string(RunMode mode) {
  return mode == RunMode::kStatic ? "static" : "controlled";
}

void RunReport::finalize(double fps) {
  const double dt = 1.0 / fps;
  nlos_s = 0.0;
  double pl_sum = 0.0;
  double snr_sum = 0.0;
  double thr_sum = 0.0;
  for (const TickRow& row : rows) {
    nlos_s += row.l_status * dt;
    pl_sum += row.pl_db;
    snr_sum += row.snr_db;
    thr_sum += row.thr_bps;
  }
  duration_s = rows.size() * dt;
  los_s = duration_s - nlos_s;
  const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  mean_pl_db = pl_sum / n;
  mean_snr_db = snr_sum / n;
  mean_thr_bps = thr_sum / n;
}

Comparison compare(const RunReport& a_static, const RunReport& b_controlled) {
  if (a_static.rows.size() != b_controlled.rows.size()) {
    throw DurationMismatch("run lengths differ: " +
                           std::to_string(a_static.rows.size()) + " vs " +
                           std::to_string(b_controlled.rows.size()));
  }
  Comparison cmp;
  cmp.nlos_static_s = a_static.nlos_s;
  cmp.nlos_controlled_s = b_controlled.nlos_s;
  cmp.reduction_fraction =
      a_static.nlos_s > 0.0 ? 1.0 - b_controlled.nlos_s / a_static.nlos_s : 0.0;
  cmp.mean_thr_static = a_static.mean_thr_bps;
  cmp.mean_thr_controlled = b_controlled.mean_thr_bps;
  cmp.mean_snr_static = a_static.mean_snr_db;
  cmp.mean_snr_controlled = b_controlled.mean_snr_db;
  return cmp;
}

void write_run_csv(const RunReport& report, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "tick,t_s,gnb_x,ue_x,ue_y,L_status,pl_db,snr_db,thr_bps\n";
  for (const TickRow& r : report.rows) {
    out << r.tick << ',' << fmt("%.6f", r.t_s) << ',' << fmt("%.6f", r.gnb_x)
        << ',' << fmt("%.6f", r.ue_x) << ',' << fmt("%.6f", r.ue_y) << ','
        << r.l_status << ',' << fmt("%.6f", r.pl_db) << ','
        << fmt("%.6f", r.snr_db) << ',' << fmt("%.3f", r.thr_bps) << '\n';
  }
}

void write_decisions_csv(const std::vector<xapp::DecisionRow>& rows,
                         const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "tick";
  for (const std::string& name : state_feature_names()) {
    out << ',' << name;
  }
  out << ",q0,q1,q2,action,x_target_m\n";
  for (const xapp::DecisionRow& r : rows) {
    out << r.tick;
    for (double f : r.features) {
      out << ',' << fmt("%.17g", f);
    }
    for (double q : r.q) {
      out << ',' << fmt("%.17g", q);
    }
    out << ',' << r.action << ',' << fmt("%.17g", r.x_target_m) << '\n';
  }
}

void write_compare_csv(const RunReport& a_static, const RunReport& b_controlled,
                       const std::filesystem::path& file) {
  if (a_static.rows.size() != b_controlled.rows.size()) {
    throw DurationMismatch("compare CSV needs equal-length runs");
  }
  auto out = open_out(file);
  out << "t_s,gnb_x_static,gnb_x_ctrl,los_static,los_ctrl,pl_static,pl_ctrl,"
         "snr_static,snr_ctrl,thr_static,thr_ctrl\n";
  for (std::size_t i = 0; i < a_static.rows.size(); ++i) {
    const TickRow& s = a_static.rows[i];
    const TickRow& c = b_controlled.rows[i];
    out << fmt("%.6f", s.t_s) << ',' << fmt("%.6f", s.gnb_x) << ','
        << fmt("%.6f", c.gnb_x) << ',' << s.l_status << ',' << c.l_status << ','
        << fmt("%.6f", s.pl_db) << ',' << fmt("%.6f", c.pl_db) << ','
        << fmt("%.6f", s.snr_db) << ',' << fmt("%.6f", c.snr_db) << ','
        << fmt("%.3f", s.thr_bps) << ',' << fmt("%.3f", c.thr_bps) << '\n';
  }
}

void write_localization_csv(const LocalizationStats& stats,
                            const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "frame,t_s,est_x,est_y,n_sources\n";
  for (const LocalizationRow& r : stats.rows) {
    out << r.frame << ',' << fmt("%.6f", r.t_s) << ',';
    if (r.has_estimate) {
      out << fmt("%.6f", r.est_x) << ',' << fmt("%.6f", r.est_y);
    } else {
      out << ',';
    }
    out << ',' << r.n_sources << '\n';
  }
}

void write_train_log_csv(const std::vector<dqn::EpisodeLog>& log,
                         const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "episode,return,nlos_fraction,epsilon,mean_loss\n";
  for (const dqn::EpisodeLog& e : log) {
    out << e.episode << ',' << fmt("%.9g", e.episode_return) << ','
        << fmt("%.6f", e.nlos_fraction) << ',' << fmt("%.6f", e.epsilon) << ','
        << fmt("%.9g", e.mean_loss) << '\n';
  }
}

namespace {

nlohmann::ordered_json run_aggregates(const RunReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  j["ticks"] = r.rows.size();
  j["duration_s"] = r.duration_s;
  j["nlos_s"] = r.nlos_s;
  j["los_s"] = r.los_s;
  j["mean_pl_db"] = r.mean_pl_db;
  j["mean_snr_db"] = r.mean_snr_db;
  j["mean_thr_bps"] = r.mean_thr_bps;
  return j;
}

nlohmann::ordered_json axis_json(const AxisStats& a) {
  nlohmann::ordered_json j;
  j["ground_truth"] = a.ground_truth;
  j["mean_estimate"] = a.mean_est;
  j["max_estimate"] = a.max_est;
  j["min_estimate"] = a.min_est;
  j["mean_deviation"] = a.mean_dev;
  return j;
}

}  // namespace

std::string run_report_json(const RunReport& report) {
  return run_aggregates(report).dump(2) + "\n";
}

std::string compare_report_json(const RunReport& a_static,
                                const RunReport& b_controlled,
                                const Comparison& cmp) {
  nlohmann::ordered_json j;
  j["static"] = run_aggregates(a_static);
  j["controlled"] = run_aggregates(b_controlled);
  j["nlos_reduction_pct"] = cmp.reduction_fraction * 100.0;
  return j.dump(2) + "\n";
}

std::string localization_report_json(const LocalizationStats& stats) {
  nlohmann::ordered_json j;
  j["frames_total"] = stats.frames_total;
  j["frames_with_estimate"] = stats.frames_with_estimate;
  j["x"] = axis_json(stats.x);
  j["y"] = axis_json(stats.y);
  return j.dump(2) + "\n";
}

void write_text(const std::string& text, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << text;
}

}  // namespace vric::harness

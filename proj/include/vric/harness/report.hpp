#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vric/dqn/trainer.hpp"
#include "vric/xapp/controller.hpp"

namespace vric::harness {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DurationMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { kStatic, kControlled };

[[nodiscard]] const char* to_string(RunMode mode);

struct TickRow {
  std::uint64_t tick = 0;
  double t_s = 0.0;
  double gnb_x = 0.0;
  double ue_x = 0.0;
  double ue_y = 0.0;
  int l_status = 0;     // ground truth
  double pl_db = 0.0;
  double snr_db = 0.0;
  double thr_bps = 0.0;
};

struct RunReport {
  RunMode mode = RunMode::kStatic;
  std::uint64_t seed = 0;
  std::vector<TickRow> rows;
  std::vector<xapp::DecisionRow> decisions;

  double duration_s = 0.0;
  double nlos_s = 0.0;
  double los_s = 0.0;
  double mean_pl_db = 0.0;
  double mean_snr_db = 0.0;
  double mean_thr_bps = 0.0;

  void finalize(double fps);
};

struct Comparison {
  double nlos_static_s = 0.0;
  double nlos_controlled_s = 0.0;
  double reduction_fraction = 0.0;  // 1 - ctrl/static (0 when static is 0)
  double mean_thr_static = 0.0;
  double mean_thr_controlled = 0.0;
  double mean_snr_static = 0.0;
  double mean_snr_controlled = 0.0;
};

[[nodiscard]] Comparison compare(const RunReport& a_static,
                                 const RunReport& b_controlled);

struct AxisStats {
  double ground_truth = 0.0;
  double mean_est = 0.0;
  double max_est = 0.0;
  double min_est = 0.0;
  double mean_dev = 0.0;  // |ground_truth - mean_est|
};

struct LocalizationRow {
  int frame = 0;
  double t_s = 0.0;
  bool has_estimate = false;
  double est_x = 0.0;
  double est_y = 0.0;
  int n_sources = 0;
};

struct LocalizationStats {
  AxisStats x;
  AxisStats y;
  int frames_total = 0;
  int frames_with_estimate = 0;
  std::vector<LocalizationRow> rows;
};

// ----------------------------------------------------------------------------
// Writers (all outputs are byte-deterministic: no wall-clock anywhere)
// ----------------------------------------------------------------------------

void write_run_csv(const RunReport& report, const std::filesystem::path& file);
void write_decisions_csv(const std::vector<xapp::DecisionRow>& rows,
                         const std::filesystem::path& file);
void write_compare_csv(const RunReport& a_static, const RunReport& b_controlled,
                       const std::filesystem::path& file);
void write_localization_csv(const LocalizationStats& stats,
                            const std::filesystem::path& file);
void write_train_log_csv(const std::vector<dqn::EpisodeLog>& log,
                         const std::filesystem::path& file);

std::string run_report_json(const RunReport& report);
std::string compare_report_json(const RunReport& a_static,
                                const RunReport& b_controlled,
                                const Comparison& cmp);
std::string localization_report_json(const LocalizationStats& stats);
void write_text(const std::string& text, const std::filesystem::path& file);

}  // namespace vric::harness

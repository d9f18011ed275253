#pragma once

#include <cstdint>
#include <optional>

#include "vric/dqn/policy.hpp"
#include "vric/harness/report.hpp"
#include "vric/twin/scenario.hpp"

namespace vric::harness {

struct PolicyLoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  RunMode mode = RunMode::kStatic;
  std::uint64_t seed = 0;
  bool zero_noise = false;  // --noise-profile zero
};

// Executes the full bus-mediated loop over the scripted scenario: perception
// agents emit POS/VIS each frame, the controller runs every control interval
// once activated, control commands drive the twin. Static mode suppresses the
// controller entirely. Ground-truth LoS and link metrics are logged per tick.
RunReport run_scenario(const twin::ScenarioConfig& scn, const RunOptions& opts,
                       const dqn::Policy* policy);

// Localization accuracy pass: reference cameras only, obstacle estimates
// aggregated over every frame against the scenario's ground truth.
LocalizationStats eval_localization(const twin::ScenarioConfig& scn,
                                    std::uint64_t seed, bool zero_noise);

// Emits run_<mode>.csv, decisions CSV (controlled runs), SVG plot and
// report.json into out_dir.
void emit_run_outputs(const RunReport& report,
                      const std::filesystem::path& out_dir);

void emit_compare_outputs(const RunReport& a_static,
                          const RunReport& b_controlled,
                          const std::filesystem::path& out_dir);

void emit_localization_outputs(const LocalizationStats& stats,
                               const std::filesystem::path& out_dir);

}  // namespace vric::harness

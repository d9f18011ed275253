#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vric::harness {

struct SvgSeries {
  std::string label;
  std::string color;  // e.g. "#1f77b4"
  std::vector<double> values;
};

struct SvgPanel {
  std::string y_label;
  std::vector<SvgSeries> series;
};

// Stacked time-series panels sharing one time axis. `transitions` draws a
// vertical dashed line per timestamp (LoS/NLoS boundaries).
std::string render_timeseries_svg(const std::string& title,
                                  const std::vector<double>& t,
                                  const std::vector<SvgPanel>& panels,
                                  const std::vector<double>& transitions);

void write_timeseries_svg(const std::filesystem::path& file,
                          const std::string& title,
                          const std::vector<double>& t,
                          const std::vector<SvgPanel>& panels,
                          const std::vector<double>& transitions);

}  // namespace vric::harness

#include "vric/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vric/harness/report.hpp"

namespace vric::harness {

namespace {

constexpr int kWidth = 900;
constexpr int kPanelHeight = 200;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kPanelGap = 30;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Range {
  double lo;
  double hi;
};

Range value_range(const std::vector<SvgSeries>& series) {
  double lo = 0.0;
  double hi = 1.0;
  bool first = true;
  for (const SvgSeries& s : series) {
    for (double v : s.values) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (hi - lo < 1e-9) {
    hi = lo + 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_timeseries_svg(const std::string& title,
                                  const std::vector<double>& t,
                                  const std::vector<SvgPanel>& panels,
                                  const std::vector<double>& transitions) {
  const int n_panels = static_cast<int>(panels.size());
  const int height = kMarginTop + n_panels * (kPanelHeight + kPanelGap);
  const double t_lo = t.empty() ? 0.0 : t.front();
  const double t_hi = (t.size() > 1) ? t.back() : t_lo + 1.0;
  const double plot_w = kWidth - kMarginLeft - kMarginRight;

  auto x_of = [&](double tv) {
    return kMarginLeft + plot_w * (tv - t_lo) / (t_hi - t_lo);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  for (int p = 0; p < n_panels; ++p) {
    const SvgPanel& panel = panels[p];
    const int top = kMarginTop + p * (kPanelHeight + kPanelGap);
    const int bottom = top + kPanelHeight;
    const Range range = value_range(panel.series);

    auto y_of = [&](double v) {
      return bottom - kPanelHeight * (v - range.lo) / (range.hi - range.lo);
    };

    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << top << "\" width=\""
        << num(plot_w) << "\" height=\"" << kPanelHeight
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"14\" y=\"" << (top + kPanelHeight / 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << (top + kPanelHeight / 2) << ")\" "
        << "text-anchor=\"middle\">" << panel.y_label << "</text>\n";
    svg << "<text x=\"" << kMarginLeft << "\" y=\"" << (top - 6)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">"
        << num(range.lo) << " .. " << num(range.hi) << "</text>\n";

    // NLoS transition markers.
    for (double tv : transitions) {
      svg << "<line x1=\"" << num(x_of(tv)) << "\" y1=\"" << top << "\" x2=\""
          << num(x_of(tv)) << "\" y2=\"" << bottom
          << "\" stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    }

    int legend_x = kMarginLeft + 8;
    for (const SvgSeries& s : panel.series) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.values.size() && i < t.size(); ++i) {
        svg << num(x_of(t[i])) << ',' << num(y_of(s.values[i])) << ' ';
      }
      svg << "\"/>\n";
      svg << "<text x=\"" << legend_x << "\" y=\"" << (top + 16)
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << s.color
          << "\">" << s.label << "</text>\n";
      legend_x += 120;
    }
  }

  // Time axis labels under the last panel.
  const int axis_y = kMarginTop + n_panels * (kPanelHeight + kPanelGap) - kPanelGap + 16;
  for (int i = 0; i <= 5; ++i) {
    const double tv = t_lo + (t_hi - t_lo) * i / 5.0;
    svg << "<text x=\"" << num(x_of(tv)) << "\" y=\"" << axis_y
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
        << "text-anchor=\"middle\">" << num(tv) << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << (axis_y + 14)
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
      << "text-anchor=\"middle\">t (s)</text>\n";

  svg << "</svg>\n";
  return svg.str();
}

void write_timeseries_svg(const std::filesystem::path& file,
                          const std::string& title,
                          const std::vector<double>& t,
                          const std::vector<SvgPanel>& panels,
                          const std::vector<double>& transitions) {
  write_text(render_timeseries_svg(title, t, panels, transitions), file);
}

}  // namespace vric::harness

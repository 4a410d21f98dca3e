#include "hyper/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hyper::cli {

namespace {

constexpr double kPanelSize = 360.0;
constexpr double kMargin = 50.0;
constexpr double kTop = 40.0;
constexpr double kLegend = 60.0;

std::string num(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string gray(double t) {
  const int g = static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
  return buf;
}

const char* label_color(double label) {
  if (label > 0) return "#d9822b";
  if (label < 0) return "#3b6fb6";
  return "#ffffff";
}

template <typename CellColor, typename Legend>
std::string render(const Lattice& lattice, std::span<const Panel> panels, const char* kind,
                   CellColor cell_color, Legend legend) {
  const Grid& grid = lattice.grid();
  const Box& box = lattice.box();
  for (const auto& p : panels) {
    if (p.values.size() != lattice.size()) {
      throw std::invalid_argument("panel '" + p.title + "' does not match the lattice");
    }
  }
  const double cw = kPanelSize / static_cast<double>(grid.nx);
  const double ch = kPanelSize / static_cast<double>(grid.ny);
  const double width = kMargin + static_cast<double>(panels.size()) * (kPanelSize + kMargin);
  const double height = kTop + kPanelSize + kLegend;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"#ffffff\"/>\n";

  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& p = panels[k];
    const double left = kMargin + static_cast<double>(k) * (kPanelSize + kMargin);
    svg << "<g class=\"" << kind << "\" data-panel=\"" << p.title << "\">\n"
        << "<text x=\"" << num(left + kPanelSize / 2) << "\" y=\"" << num(kTop - 14)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << p.title << "</text>\n";
    for (std::size_t idx = 0; idx < lattice.size(); ++idx) {
      const std::size_t i = idx % grid.nx;
      const std::size_t j = idx / grid.nx;
      const Point pt = lattice.at(idx);
      // y grows upward: row j = 0 sits at the bottom of the panel.
      const double rx = left + static_cast<double>(i) * cw;
      const double ry = kTop + static_cast<double>(grid.ny - 1 - j) * ch;
      svg << "<rect x=\"" << num(rx) << "\" y=\"" << num(ry) << "\" width=\"" << num(cw)
          << "\" height=\"" << num(ch) << "\" fill=\"" << cell_color(k, p.values[idx])
          << "\" data-x=\"" << format_csv_real(pt.x) << "\" data-y=\"" << format_csv_real(pt.y)
          << "\" data-value=\"" << format_csv_real(p.values[idx]) << "\"/>\n";
    }
    const double bottom = kTop + kPanelSize;
    svg << "<rect x=\"" << num(left) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPanelSize)
        << "\" height=\"" << num(kPanelSize) << "\" fill=\"none\" stroke=\"#000000\"/>\n"
        << "<text x=\"" << num(left) << "\" y=\"" << num(bottom + 14) << "\">" << num(box.x_min)
        << "</text>\n"
        << "<text x=\"" << num(left + kPanelSize) << "\" y=\"" << num(bottom + 14)
        << "\" text-anchor=\"end\">" << num(box.x_max) << "</text>\n"
        << "<text x=\"" << num(left + kPanelSize / 2) << "\" y=\"" << num(bottom + 14)
        << "\" text-anchor=\"middle\">x</text>\n"
        << "<text x=\"" << num(left - 4) << "\" y=\"" << num(bottom) << "\" text-anchor=\"end\">"
        << num(box.y_min) << "</text>\n"
        << "<text x=\"" << num(left - 4) << "\" y=\"" << num(kTop + 10)
        << "\" text-anchor=\"end\">" << num(box.y_max) << "</text>\n"
        << "<text x=\"" << num(left - 4) << "\" y=\"" << num(kTop + kPanelSize / 2)
        << "\" text-anchor=\"end\">y</text>\n"
        << "<text class=\"legend\" x=\"" << num(left) << "\" y=\"" << num(bottom + 34) << "\">"
        << legend(k) << "</text>\n"
        << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string render_heatmaps(const Lattice& lattice, std::span<const Panel> panels) {
  std::vector<Range> ranges;
  for (const auto& p : panels) {
    if (p.values.empty()) throw std::invalid_argument("panel '" + p.title + "' is empty");
    const auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
    ranges.push_back({*lo, *hi});
  }
  const auto color = [&ranges](std::size_t k, double v) {
    const Range& r = ranges[k];
    return gray(r.max > r.min ? (v - r.min) / (r.max - r.min) : 0.5);
  };
  const auto legend = [&ranges](std::size_t k) {
    return "black = " + format_csv_real(ranges[k].min) +
           ", white = " + format_csv_real(ranges[k].max);
  };
  return render(lattice, panels, "heatmap", color, legend);
}

std::string render_label_maps(const Lattice& lattice, std::span<const Panel> panels) {
  const auto color = [](std::size_t, double v) { return std::string(label_color(v)); };
  const auto legend = [](std::size_t) {
    return std::string("blue = below threshold, white = on threshold, orange = above");
  };
  return render(lattice, panels, "labels", color, legend);
}

}  // namespace hyper::cli

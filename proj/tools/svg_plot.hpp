#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace wreathwalk::plot {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Static SVG line plot. x is drawn on a log scale (the n axis), y linear.
void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<Series>& series);

}  // namespace wreathwalk::plot

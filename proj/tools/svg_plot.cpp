#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "wreathwalk/csv.hpp"
#include "wreathwalk/errors.hpp"

namespace wreathwalk::plot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) { return csv_format(v); }

}  // namespace

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& y_label, const std::vector<Series>& series) {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool first = true;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0)) {
        throw Error("log-x plot needs positive x values");
      }
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (first) {
    throw Error("nothing to plot");
  }
  if (y_min > 0.0 && y_min < 0.25 * y_max) y_min = 0.0;  // anchor small ranges
  if (y_max == y_min) y_max = y_min + 1.0;
  const double lx_min = std::log(x_min);
  const double lx_max = x_max > x_min ? std::log(x_max) : lx_min + 1.0;

  auto sx = [&](double x) {
    return kLeft + (std::log(x) - lx_min) / (lx_max - lx_min) *
                       (kWidth - kLeft - kRight);
  };
  auto sy = [&](double y) {
    return kHeight - kBottom -
           (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
      << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth)
      << " " << fmt(kHeight) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kHeight - kBottom)
      << "\" x2=\"" << fmt(kWidth - kRight) << "\" y2=\"" << fmt(kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\""
      << fmt(kLeft) << "\" y2=\"" << fmt(kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";

  // x ticks at powers of two across the range
  for (double x = std::exp2(std::ceil(std::log2(x_min))); x <= x_max * 1.0001;
       x *= 2.0) {
    const double px = sx(x);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kHeight - kBottom)
        << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(kHeight - kBottom + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(kHeight - kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fmt(x) << "</text>\n";
  }
  // y ticks
  for (int i = 0; i <= 4; ++i) {
    const double y = y_min + (y_max - y_min) * i / 4.0;
    const double py = sy(y);
    out << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(kLeft) << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(y) << "</text>\n";
  }
  out << "<text x=\"16\" y=\"" << fmt(kTop - 10)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << y_label
      << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[i].points) {
      out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
    }
    out << "\"/>\n";
    for (const auto& [x, y] : series[i].points) {
      out << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << fmt(kWidth - kRight - 150)
        << "\" y=\"" << fmt(kTop + 16.0 * static_cast<double>(i))
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
        << "\">" << series[i].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace wreathwalk::plot

#ifndef PARAOPT_SVG_HPP
#define PARAOPT_SVG_HPP

#include <string>
#include <vector>

namespace paraopt {

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Self-contained SVG line plot (no external dependencies). Log axes show
/// decade ticks: values must be positive on a log axis.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series, bool logx, bool logy);

}  // namespace paraopt

#endif

#include "paraopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace paraopt {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series, bool logx, bool logy) {
  const double W = 900, H = 600, ml = 80, mr = 30, mt = 50, mb = 60;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      double xv = s.x[i], yv = s.y[i];
      if (logx && xv <= 0.0) continue;
      if (logy && yv <= 0.0) continue;
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  if (!(xmin < xmax)) xmax = xmin + 1.0;
  if (!(ymin < ymax)) ymax = ymin + 1.0;

  auto tx = [&](double v) {
    double a = logx ? std::log10(xmin) : xmin, b = logx ? std::log10(xmax) : xmax;
    double u = logx ? std::log10(v) : v;
    return ml + (u - a) / (b - a) * pw;
  };
  auto ty = [&](double v) {
    double a = logy ? std::log10(ymin) : ymin, b = logy ? std::log10(ymax) : ymax;
    double u = logy ? std::log10(v) : v;
    return mt + ph - (u - a) / (b - a) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' viewBox='0 0 " << W << " " << H << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << W / 2 << "' y='25' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";

  // axes
  svg << "<line x1='" << ml << "' y1='" << mt + ph << "' x2='" << ml + pw << "' y2='" << mt + ph
      << "' stroke='black'/>\n"
      << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << mt + ph
      << "' stroke='black'/>\n";

  auto ticks = [&](double lo, double hi, bool logscale) {
    std::vector<double> t;
    if (logscale) {
      int e0 = static_cast<int>(std::floor(std::log10(lo)));
      int e1 = static_cast<int>(std::ceil(std::log10(hi)));
      int step = std::max(1, (e1 - e0) / 10);
      for (int e = e0; e <= e1; e += step) {
        double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) t.push_back(v);
      }
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5);
    }
    return t;
  };
  for (double v : ticks(xmin, xmax, logx)) {
    double px = tx(v);
    svg << "<line x1='" << px << "' y1='" << mt + ph << "' x2='" << px << "' y2='" << mt + ph + 5
        << "' stroke='black'/>\n"
        << "<text x='" << px << "' y='" << mt + ph + 20 << "' text-anchor='middle' font-size='11'>"
        << fmt(v) << "</text>\n";
  }
  for (double v : ticks(ymin, ymax, logy)) {
    double py = ty(v);
    svg << "<line x1='" << ml - 5 << "' y1='" << py << "' x2='" << ml << "' y2='" << py
        << "' stroke='black'/>\n"
        << "<text x='" << ml - 8 << "' y='" << py + 4 << "' text-anchor='end' font-size='11'>"
        << fmt(v) << "</text>\n";
  }
  svg << "<text x='" << ml + pw / 2 << "' y='" << H - 15 << "' text-anchor='middle' font-size='13'>"
      << xlabel << "</text>\n"
      << "<text x='20' y='" << mt + ph / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 20 "
      << mt + ph / 2 << ")'>" << ylabel << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 8];
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if ((logx && s.x[i] <= 0.0) || (logy && s.y[i] <= 0.0)) continue;
      svg << tx(s.x[i]) << "," << ty(s.y[i]) << " ";
    }
    svg << "'/>\n";
    svg << "<text x='" << ml + pw - 10 << "' y='" << mt + 16 + 16 * ci
        << "' text-anchor='end' font-size='12' fill='" << color << "'>" << s.label
        << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << svg.str();
}

}  // namespace paraopt

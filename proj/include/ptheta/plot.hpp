#pragma once

// SVG rendering of zero curves in the (q, log10|x|) plane with dashed
// power-curve overlays |x| = |q|^{-a}.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ptheta/real_zeros.hpp"

namespace ptheta {

struct PlotOptions {
  bool q_negative = false;  // axis q in (-1, 0) instead of (0, 1)
  double log_x_max = 0.0;   // 0: from the data, at least 2
  int width = 800, height = 600;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct PlotFrame {
  double left = 70, right = 20, top = 20, bottom = 50;
  double w, h, q_lo, q_hi, y_hi;

  double px(double q) const { return left + (q - q_lo) / (q_hi - q_lo) * (w - left - right); }
  double py(double ly) const { return h - bottom - ly / y_hi * (h - top - bottom); }
};

inline void polyline(std::ostringstream& os, const std::vector<std::pair<double, double>>& pts,
                     const PlotFrame& f, const char* style) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " " : "") << svg_num(f.px(pts[i].first)) << ',' << svg_num(f.py(pts[i].second));
  os << "\"/>\n";
}

}  // namespace detail

inline std::string emit_curve_plot(const std::vector<ZeroCurve>& curves, const std::vector<double>& asymptotes,
                                   const PlotOptions& opt = {}) {
  detail::PlotFrame f;
  f.w = opt.width;
  f.h = opt.height;
  f.q_lo = opt.q_negative ? -1.0 : 0.0;
  f.q_hi = opt.q_negative ? 0.0 : 1.0;
  double y_hi = opt.log_x_max;
  if (y_hi <= 0) {
    y_hi = 2.0;
    for (const auto& c : curves)
      for (const auto& s : c.samples)
        if (s.x != 0.0) y_hi = std::max(y_hi, std::ceil(std::log10(std::abs(s.x))));
  }
  f.y_hi = y_hi;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes with ticks every 0.1 in q and every decade in |x|.
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << detail::svg_num(f.px(f.q_lo)) << "\" y1=\"" << detail::svg_num(f.py(0)) << "\" x2=\""
     << detail::svg_num(f.px(f.q_hi)) << "\" y2=\"" << detail::svg_num(f.py(0)) << "\"/>\n";
  os << "<line x1=\"" << detail::svg_num(f.px(f.q_lo)) << "\" y1=\"" << detail::svg_num(f.py(0)) << "\" x2=\""
     << detail::svg_num(f.px(f.q_lo)) << "\" y2=\"" << detail::svg_num(f.py(y_hi)) << "\"/>\n";
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double q = f.q_lo + 0.1 * i;
    char label[16];
    std::snprintf(label, sizeof label, "%.1f", std::abs(q) < 1e-12 ? 0.0 : q);
    os << "<text x=\"" << detail::svg_num(f.px(q)) << "\" y=\"" << detail::svg_num(f.py(0) + 16) << "\">"
       << label << "</text>\n";
  }
  for (int d = 0; d <= static_cast<int>(y_hi); ++d)
    os << "<text x=\"" << detail::svg_num(f.left - 22) << "\" y=\"" << detail::svg_num(f.py(d) + 4)
       << "\">1e" << d << "</text>\n";
  os << "<text x=\"" << detail::svg_num(0.5 * (f.px(f.q_lo) + f.px(f.q_hi))) << "\" y=\""
     << detail::svg_num(f.h - 10) << "\">q</text>\n";
  os << "<text x=\"16\" y=\"" << detail::svg_num(0.5 * (f.py(0) + f.py(y_hi)))
     << "\" transform=\"rotate(-90 16 " << detail::svg_num(0.5 * (f.py(0) + f.py(y_hi))) << ")\">|x|</text>\n";
  os << "</g>\n";

  // Overlays |x| = |q|^{-a}, clipped to the plot range.
  for (double a : asymptotes) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i < 400; ++i) {
      const double aq = i / 400.0;
      const double ly = -a * std::log10(aq);
      if (ly > y_hi) continue;
      pts.emplace_back(opt.q_negative ? -aq : aq, ly);
    }
    detail::polyline(os, pts, f, "stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"5,4\"");
  }

  // Curves, one polyline per branch; positive zeros in red.
  for (const auto& c : curves) {
    for (Branch b : {Branch::lower_branch, Branch::upper_branch}) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& s : c.samples)
        if (s.branch == b && s.x != 0.0) pts.emplace_back(s.q, std::min(y_hi, std::log10(std::abs(s.x))));
      if (c.turning_point) {
        std::pair<double, double> tp{c.turning_point->q, std::log10(std::abs(c.turning_point->x))};
        if (b == Branch::lower_branch)
          pts.push_back(tp);
        else
          pts.insert(pts.begin(), tp);
      }
      const bool positive = c.regime == Regime::q_neg_positive_zeros;
      detail::polyline(os, pts, f,
                       positive ? "stroke=\"#c0392b\" stroke-width=\"1.5\"" : "stroke=\"#1f4e9c\" stroke-width=\"1.5\"");
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ptheta

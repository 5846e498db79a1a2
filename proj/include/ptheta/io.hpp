#pragma once

// Flat-file emission: CSV and JSON with numbers at 17 significant digits.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptheta/approx.hpp"
#include "ptheta/complex_zeros.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/real_zeros.hpp"
#include "ptheta/spectrum.hpp"

namespace ptheta::io {

using json = nlohmann::ordered_json;

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON text with every floating-point number at 17 significant digits;
/// non-finite numbers become null.
inline void dump(std::ostream& os, const json& j, int indent = 2, int level = 0) {
  const std::string pad(indent * (level + 1), ' '), end_pad(indent * level, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        dump(os, it.value(), indent, level + 1);
      }
      os << "\n" << end_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        dump(os, j[i], indent, level + 1);
      }
      os << "\n" << end_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? fmt(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

inline std::string dump(const json& j) {
  std::ostringstream os;
  dump(os, j);
  os << "\n";
  return os.str();
}

inline json to_json(const RealApprox& a) {
  return {{"value", a.value}, {"err", a.err}, {"terms_used", a.terms_used},
          {"reductions_used", a.reductions_used}, {"magnitude", a.magnitude}};
}

inline json to_json(const ComplexApprox& a) {
  return {{"re", a.value.real()}, {"im", a.value.imag()}, {"err", a.err}, {"terms_used", a.terms_used},
          {"reductions_used", a.reductions_used}, {"magnitude", a.magnitude}};
}

inline json to_json(const SpectralPoint& p) {
  return {{"regime", to_string(p.regime)},
          {"index", p.index},
          {"q_star", p.q_star},
          {"y_double", p.y_double},
          {"residuals", {{"theta", p.residual_theta}, {"dtheta", p.residual_dtheta}}},
          {"second_deriv", p.second_deriv}};
}

inline json to_json(const ContainmentReport& r) {
  json zs = json::array();
  for (auto z : r.zeros) zs.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"q", r.q},
          {"zeros", zs},
          {"violations", r.violations},
          {"min_abs_re", r.min_abs_re},
          {"max_abs_im", r.max_abs_im},
          {"conjugate_symmetric", r.conjugate_symmetric}};
}

// Curves: regime,index,branch,q,x

inline void write_curves_csv(std::ostream& os, const std::vector<ZeroCurve>& curves) {
  os << "regime,index,branch,q,x\n";
  for (const auto& c : curves)
    for (const auto& s : c.samples)
      os << to_string(c.regime) << ',' << c.index << ',' << to_string(s.branch) << ',' << fmt(s.q) << ','
         << fmt(s.x) << '\n';
}

struct CurveRow {
  std::string regime;
  int index = 0;
  std::string branch;
  double q = 0.0, x = 0.0;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline std::vector<CurveRow> read_curves_csv(std::istream& is) {
  std::vector<CurveRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != "regime,index,branch,q,x")
    throw std::runtime_error("read_curves_csv: unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 5) throw std::runtime_error("read_curves_csv: expected 5 columns");
    rows.push_back({f[0], std::stoi(f[1]), f[2], std::stod(f[3]), std::stod(f[4])});
  }
  return rows;
}

// Pair tracks: pair_index,q,re_x,im_x,crossed_flag

inline void write_pair_tracks_csv(std::ostream& os, const std::vector<PairTrack>& tracks) {
  os << "pair_index,q,re_x,im_x,crossed_flag\n";
  for (const auto& t : tracks)
    for (std::size_t i = 0; i < t.q_samples.size(); ++i) {
      const bool crossed = t.crossing_q && t.q_samples[i] > *t.crossing_q;
      os << t.pair_index << ',' << fmt(t.q_samples[i]) << ',' << fmt(t.x_samples[i].real()) << ','
         << fmt(t.x_samples[i].imag()) << ',' << (crossed ? 1 : 0) << '\n';
    }
}

inline json to_json(const PairTrack& t) {
  json samples = json::array();
  for (std::size_t i = 0; i < t.q_samples.size(); ++i)
    samples.push_back({{"q", t.q_samples[i]}, {"re_x", t.x_samples[i].real()}, {"im_x", t.x_samples[i].imag()}});
  json j = {{"pair_index", t.pair_index}, {"birth_q", t.birth_q}};
  j["crossing_q"] = t.crossing_q ? json(*t.crossing_q) : json(nullptr);
  j["post_crossing_contained"] = t.post_crossing_contained;
  j["samples"] = samples;
  return j;
}

// Spectrum: regime,index,q_star,y_double,residual_theta,residual_dtheta,second_deriv

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectralPoint>& pts) {
  os << "regime,index,q_star,y_double,residual_theta,residual_dtheta,second_deriv\n";
  for (const auto& p : pts)
    os << to_string(p.regime) << ',' << p.index << ',' << fmt(p.q_star) << ',' << fmt(p.y_double) << ','
       << fmt(p.residual_theta) << ',' << fmt(p.residual_dtheta) << ',' << fmt(p.second_deriv) << '\n';
}

inline json spectrum_json(const std::vector<SpectralPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

}  // namespace ptheta::io

#include <cmath>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "ptheta/io.hpp"
#include "ptheta/plot.hpp"

using namespace ptheta;

namespace {

std::vector<double> grid(double from, double to, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(from + (to - from) * i / n);
  return g;
}

const std::vector<ZeroCurve>& atlas() {
  static const std::vector<ZeroCurve> curves = [] {
    std::vector<ZeroCurve> c;
    for (int j = 1; j <= 3; ++j) c.push_back(trace_curve(Regime::q_pos, j, grid(0.01, 0.9, 89)));
    return c;
  }();
  return curves;
}

}  // namespace

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(io::fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(io::fmt(-2.0), "-2");
  EXPECT_EQ(std::stod(io::fmt(M_PI)), M_PI);
}

TEST(Format, JsonNumbersAndNonFinite) {
  io::json j = {{"a", 0.1}, {"b", NAN}, {"c", 3}, {"d", {1.5, INFINITY}}};
  const std::string s = io::dump(j);
  EXPECT_NE(s.find("\"a\": 0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"b\": null"), std::string::npos);
  EXPECT_NE(s.find("\"c\": 3"), std::string::npos);
  auto back = io::json::parse(s);
  EXPECT_EQ(back["a"].get<double>(), 0.1);
  EXPECT_TRUE(back["d"][1].is_null());
}

TEST(CurvesCsv, RoundTrip) {
  std::ostringstream os;
  io::write_curves_csv(os, atlas());
  std::istringstream is(os.str());
  auto rows = io::read_curves_csv(is);
  std::size_t k = 0;
  for (const auto& c : atlas())
    for (const auto& s : c.samples) {
      ASSERT_LT(k, rows.size());
      EXPECT_EQ(rows[k].regime, to_string(c.regime));
      EXPECT_EQ(rows[k].index, c.index);
      EXPECT_EQ(rows[k].branch, to_string(s.branch));
      EXPECT_EQ(rows[k].q, s.q);
      EXPECT_EQ(rows[k].x, s.x);
      ++k;
    }
  EXPECT_EQ(k, rows.size());
}

TEST(CurvesCsv, Deterministic) {
  std::ostringstream a, b;
  io::write_curves_csv(a, atlas());
  io::write_curves_csv(b, {trace_curve(Regime::q_pos, 1, grid(0.01, 0.9, 89)),
                           trace_curve(Regime::q_pos, 2, grid(0.01, 0.9, 89)),
                           trace_curve(Regime::q_pos, 3, grid(0.01, 0.9, 89))});
  EXPECT_EQ(a.str(), b.str());
}

TEST(CurvesCsv, RejectsWrongHeader) {
  std::istringstream is("q,x\n0.1,2\n");
  EXPECT_THROW(io::read_curves_csv(is), std::runtime_error);
}

TEST(SpectrumCsv, Columns) {
  SpectralPoint p;
  p.index = 1;
  p.q_star = 0.30924933860007708;
  p.y_double = -7.5032559642441639;
  std::ostringstream os;
  io::write_spectrum_csv(os, {p});
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "regime,index,q_star,y_double,residual_theta,residual_dtheta,second_deriv");
  auto f = io::split_csv_line(row);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(f[0], "q_pos");
  EXPECT_EQ(std::stod(f[2]), p.q_star);
  EXPECT_EQ(std::stod(f[3]), p.y_double);
}

TEST(PairTrackCsv, CrossedFlag) {
  PairTrack t;
  t.pair_index = 1;
  t.q_samples = {0.70, 0.72, 0.74};
  t.x_samples = {{-0.5, 3.0}, {-0.1, 3.1}, {0.2, 3.2}};
  t.crossing_q = 0.73;
  std::ostringstream os;
  io::write_pair_tracks_csv(os, {t});
  EXPECT_EQ(os.str(),
            "pair_index,q,re_x,im_x,crossed_flag\n"
            "1,0.69999999999999996,-0.5,3,0\n"
            "1,0.71999999999999997,-0.10000000000000001,3.1000000000000001,0\n"
            "1,0.73999999999999999,0.20000000000000001,3.2000000000000002,1\n");
  auto j = io::to_json(t);
  EXPECT_EQ(j["crossing_q"].get<double>(), 0.73);
  EXPECT_EQ(j["samples"].size(), 3u);
}

TEST(Svg, EmptyCurveListHasAxesOnly) {
  const std::string s = emit_curve_plot({}, {});
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_NE(s.find("<line"), std::string::npos);
  EXPECT_EQ(s.find("<polyline"), std::string::npos);
}

TEST(Svg, BalancedTags) {
  const std::string s = emit_curve_plot(atlas(), {0.5, 1, 1.5, 2, 2.5, 3.5});
  auto count = [&](const std::string& pat) {
    std::size_t n = 0;
    for (auto p = s.find(pat); p != std::string::npos; p = s.find(pat, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("<svg"), count("</svg>"));
  EXPECT_EQ(count("<g"), count("</g>"));
  EXPECT_EQ(count("<text"), count("</text>"));
  // Two branches per curve plus one dashed overlay per exponent.
  EXPECT_EQ(count("<polyline"), 3u * 2 + 6);
  EXPECT_EQ(count("stroke-dasharray"), 6u);
}

TEST(Svg, Deterministic) {
  const std::vector<double> a{0.5, 1, 1.5, 2, 2.5, 3.5};
  EXPECT_EQ(emit_curve_plot(atlas(), a), emit_curve_plot(atlas(), a));
}

TEST(Svg, NegativeSideAxis) {
  PlotOptions po;
  po.q_negative = true;
  const std::string s = emit_curve_plot({}, {1, 2, 3, 4, 5, 6, 7, 8}, po);
  EXPECT_NE(s.find(">-1.0<"), std::string::npos);
  EXPECT_NE(s.find(">0.0<"), std::string::npos);
}

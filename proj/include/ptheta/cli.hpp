#pragma once

// Command-line front end.  run() parses argv, validates the per-command
// inputs, dispatches and writes CSV/JSON (and optionally SVG).
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptheta/complex_zeros.hpp"
#include "ptheta/identities.hpp"
#include "ptheta/io.hpp"
#include "ptheta/plot.hpp"
#include "ptheta/real_zeros.hpp"
#include "ptheta/spectrum.hpp"
#include "ptheta/verify.hpp"

namespace ptheta::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::optional<double> q, x, y;
  std::optional<int> j_max;
  std::optional<int> s;
  std::vector<double> a;
  int precision = 16;
  Format format = Format::csv;
  std::string out_path;
  bool plot = false;
  std::uint64_t seed = 20240611;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"eval",     "identities", "zeros",       "curves",
                                             "spectrum", "complex",    "verify-paper"};
  return c;
}

inline void validate(const RunConfig& rc) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw UsageError(rc.command + ": " + what);
  };
  need(rc.precision >= 15, "--precision must be >= 15");
  if (rc.q) need(std::abs(*rc.q) < 1.0, "--q must satisfy |q| < 1");
  if (rc.j_max) need(*rc.j_max >= 1, "--jmax must be >= 1");
  if (rc.s) need(*rc.s >= 1, "--s must be >= 1");
  if (rc.plot) need(!rc.out_path.empty(), "--plot needs --out");
  const std::string& c = rc.command;
  if (c == "eval") {
    need(rc.q.has_value(), "--q is required");
    need(rc.x.has_value() != rc.y.has_value(), "exactly one of --x or --y (x = i y) is required");
  } else if (c == "identities") {
    need(rc.q.has_value() && *rc.q != 0.0, "--q (nonzero) is required");
  } else if (c == "zeros") {
    need(rc.q.has_value() && *rc.q != 0.0, "--q (nonzero) is required");
  } else if (c == "complex") {
    need(rc.q.has_value() && *rc.q != 0.0, "--q (nonzero) is required");
    if (rc.j_max) need(*rc.q > 0.0, "pair tracking (--jmax) needs q > 0");
  } else if (c == "spectrum") {
    need(rc.j_max.has_value(), "--jmax is required");
  }
  for (double a : rc.a) need(a > 0.0, "--a values must be positive");
}

namespace detail {

inline EvalConfig eval_config(const RunConfig& rc) {
  EvalConfig cfg;
  cfg.precision_digits = rc.precision;
  return cfg;
}

inline std::vector<double> side_grid(double q_end) {
  std::vector<double> g;
  const double sign = q_end < 0 ? -1.0 : 1.0;
  for (int i = 1; i < 100; ++i) {
    const double q = 0.01 * i;
    if (q > std::abs(q_end) + 1e-12) break;
    g.push_back(sign * q);
  }
  return g;
}

inline std::string eval_cmd(const RunConfig& rc, const EvalConfig& cfg) {
  std::ostringstream os;
  if (rc.x) {
    auto v = theta(*rc.q, *rc.x, cfg);
    if (rc.format == Format::json) return io::dump(io::to_json(v));
    os << "q,x,value,err\n" << io::fmt(*rc.q) << ',' << io::fmt(*rc.x) << ',' << io::fmt(v.value) << ','
       << io::fmt(v.err) << '\n';
    return os.str();
  }
  auto v = theta(*rc.q, std::complex<double>(0.0, *rc.y), cfg);
  if (rc.format == Format::json) return io::dump(io::to_json(v));
  os << "q,re_x,im_x,re_value,im_value,err\n"
     << io::fmt(*rc.q) << ",0," << io::fmt(*rc.y) << ',' << io::fmt(v.value.real()) << ','
     << io::fmt(v.value.imag()) << ',' << io::fmt(v.err) << '\n';
  return os.str();
}

inline std::string identities_cmd(const RunConfig& rc, const EvalConfig& cfg) {
  const double q = *rc.q;
  const double x = rc.x.value_or(1.5);
  const double y = rc.y.value_or(2.0);
  const int s = rc.s.value_or(1);
  std::vector<std::pair<std::string, verify::IdentityResidual>> rows;
  rows.emplace_back("functional_equation", verify::functional_equation(q, x, cfg));
  rows.emplace_back("heat_equation", verify::heat_equation(q, x, cfg));
  rows.emplace_back("theta_one_product", verify::theta_one(q, cfg));
  rows.emplace_back("imag_axis_decomposition", verify::imag_axis(q, y, cfg));
  if (q > 0) {
    if (x != 0.0) rows.emplace_back("triple_product", verify::triple_product(q, x, cfg));
    rows.emplace_back("phi_product", verify::phi_product(q, cfg));
    rows.emplace_back("halfint_phi_identity", verify::halfint(q, s, cfg));
    rows.emplace_back("k1_k2", verify::k1k2(q, y, cfg));
    auto r = phi_k_functional_residual(q, rc.a.empty() ? 2.0 : rc.a.front(), cfg);
    rows.emplace_back("phi_k_functional_equation", verify::IdentityResidual{r.value, r.bound, 1.0});
  } else {
    rows.emplace_back("psi_decomposition", verify::psi_split(-q, x, cfg));
  }
  if (rc.format == Format::json) {
    io::json a = io::json::array();
    for (auto& [n, r] : rows)
      a.push_back({{"identity", n}, {"residual", r.value}, {"bound", r.bound}, {"holds", r.value <= r.bound}});
    return io::dump(a);
  }
  std::ostringstream os;
  os << "identity,residual,bound,holds\n";
  for (auto& [n, r] : rows)
    os << n << ',' << io::fmt(r.value) << ',' << io::fmt(r.bound) << ',' << (r.value <= r.bound ? 1 : 0) << '\n';
  return os.str();
}

inline std::string zeros_cmd(const RunConfig& rc, const EvalConfig& cfg) {
  const double q = *rc.q;
  const int n = rc.j_max.value_or(6);
  std::vector<std::tuple<std::string, int, double>> rows;  // family, label, x
  if (q > 0) {
    auto z = rightmost_real_zeros(q, n, cfg);
    for (int i = 0; i < n; ++i) rows.emplace_back("xi", i + 1, z[i]);
  } else {
    auto z = zeros_qneg(q, n, cfg);
    for (std::size_t i = 0; i < z.negatives.size(); ++i)
      rows.emplace_back("zeta", z.negative_labels[i], z.negatives[i]);
    for (std::size_t i = 0; i < z.positives.size(); ++i)
      rows.emplace_back("eta", z.positive_labels[i], z.positives[i]);
  }
  if (rc.format == Format::json) {
    io::json a = io::json::array();
    for (auto& [f, l, x] : rows) a.push_back({{"family", f}, {"label", l}, {"x", x}});
    return io::dump({{"q", q}, {"zeros", a}});
  }
  std::ostringstream os;
  os << "family,label,q,x\n";
  for (auto& [f, l, x] : rows) os << f << ',' << l << ',' << io::fmt(q) << ',' << io::fmt(x) << '\n';
  return os.str();
}

inline std::string curves_cmd(const RunConfig& rc, const EvalConfig& cfg, std::string* svg) {
  const double q_end = rc.q.value_or(0.99);
  const int n = rc.j_max.value_or(3);
  auto grid = side_grid(q_end == 0.0 ? 0.99 : q_end);
  std::vector<ZeroCurve> curves;
  if (q_end >= 0) {
    for (int j = 1; j <= n; ++j) curves.push_back(trace_curve(Regime::q_pos, j, grid, cfg));
  } else {
    for (int j = 1; j <= n; ++j) {
      curves.push_back(trace_curve(Regime::q_neg_negative_zeros, j, grid, cfg));
      curves.push_back(trace_curve(Regime::q_neg_positive_zeros, j, grid, cfg));
    }
  }
  if (svg) {
    PlotOptions po;
    po.q_negative = q_end < 0;
    *svg = emit_curve_plot(curves, rc.a, po);
  }
  std::ostringstream os;
  if (rc.format == Format::json) {
    io::json a = io::json::array();
    for (const auto& c : curves) {
      io::json s = io::json::array();
      for (const auto& p : c.samples) s.push_back({{"branch", to_string(p.branch)}, {"q", p.q}, {"x", p.x}});
      io::json j = {{"regime", to_string(c.regime)}, {"index", c.index}, {"samples", s}};
      if (c.turning_point)
        j["turning_point"] = {{"q", c.turning_point->q}, {"x", c.turning_point->x}};
      else
        j["turning_point"] = nullptr;
      a.push_back(j);
    }
    return io::dump(a);
  }
  io::write_curves_csv(os, curves);
  return os.str();
}

inline std::string spectrum_cmd(const RunConfig& rc, const EvalConfig& cfg) {
  const bool neg = rc.q && *rc.q < 0;
  auto pts = neg ? spectrum_qneg(*rc.j_max, cfg) : spectrum_qpos(*rc.j_max, cfg);
  if (rc.format == Format::json) return io::dump(io::spectrum_json(pts));
  std::ostringstream os;
  io::write_spectrum_csv(os, pts);
  return os.str();
}

inline std::string complex_cmd(const RunConfig& rc, const EvalConfig& cfg) {
  const double q = *rc.q;
  std::ostringstream os;
  if (rc.j_max) {
    auto spec = spectrum_qpos(*rc.j_max, cfg);
    std::vector<PairTrack> tracks;
    for (int j = 1; j <= *rc.j_max; ++j) {
      std::vector<double> grid;
      for (int i = 1;; ++i) {
        const double qi = spec[j - 1].q_star + 0.005 * i;
        if (qi > q + 1e-12) break;
        grid.push_back(qi);
      }
      if (grid.empty()) continue;
      tracks.push_back(track_pair(j, grid, cfg, &spec[j - 1]));
    }
    if (rc.format == Format::json) {
      io::json a = io::json::array();
      for (const auto& t : tracks) a.push_back(io::to_json(t));
      return io::dump(a);
    }
    io::write_pair_tracks_csv(os, tracks);
    return os.str();
  }
  auto audit = containment_audit(q, cfg);
  if (rc.format == Format::json) {
    auto j = io::to_json(audit);
    j["pair_count"] = static_cast<int>(audit.zeros.size());
    return io::dump(j);
  }
  os << "q,re_x,im_x\n";
  for (auto z : audit.zeros) os << io::fmt(q) << ',' << io::fmt(z.real()) << ',' << io::fmt(z.imag()) << '\n';
  return os.str();
}

inline std::string verify_cmd(const RunConfig& rc, std::ostream& err, bool& all_pass) {
  verify::VerifyOptions vo;
  vo.precision = rc.precision;
  vo.seed = rc.seed;
  auto rep = verify::verify_paper(vo);
  err << rep.summary();
  all_pass = rep.failed() == 0;
  if (rc.format == Format::json) return io::dump(rep.to_json());
  std::ostringstream os;
  os << "name,expected,computed,tolerance,pass,runtime_seconds\n";
  for (const auto& c : rep.checks) {
    std::string e = c.expected.is_array() ? io::fmt(c.expected[0].get<double>()) + ";" +
                                                io::fmt(c.expected[1].get<double>())
                                          : io::fmt(c.expected.get<double>());
    os << c.name << ',' << e << ',' << io::fmt(c.computed) << ',' << io::fmt(c.tolerance) << ','
       << (c.pass ? 1 : 0) << ',' << io::fmt(c.runtime_seconds) << '\n';
  }
  return os.str();
}

inline std::string svg_path_for(const std::string& out) {
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".svg";
  return out + ".svg";
}

}  // namespace detail

/// Parses argv into a RunConfig.  Throws CLI::ParseError or UsageError.
inline RunConfig parse(int argc, const char* const* argv, CLI::App& app) {
  RunConfig rc;
  std::string format = "csv";
  double q = 0, x = 0, y = 0;
  int jmax = 0, s = 0;
  app.add_option("command", rc.command, "Command")
      ->required()
      ->check(CLI::IsMember(commands()));
  auto oq = app.add_option("--q", q, "Nome q, |q| < 1 (its sign selects the regime where relevant)");
  auto ox = app.add_option("--x", x, "Real argument x");
  auto oy = app.add_option("--y", y, "Imaginary argument: x = i y");
  auto oj = app.add_option("--jmax", jmax, "Number of spectral values / curves / pairs");
  auto os = app.add_option("--s", s, "Index s of the half-integer identity");
  app.add_option("--a", rc.a, "Exponents a for x = -q^{-a} overlays, or k for phi_k")->delimiter(',');
  app.add_option("--precision", rc.precision, "Decimal digits for multiprecision fallbacks (>= 15)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", rc.out_path, "Output file (default: standard output)");
  app.add_flag("--plot", rc.plot, "Also write an SVG plot next to --out (curves)");
  app.add_option("--seed", rc.seed, "Seed for randomized checks");
  app.parse(argc, argv);
  if (*oq) rc.q = q;
  if (*ox) rc.x = x;
  if (*oy) rc.y = y;
  if (*oj) rc.j_max = jmax;
  if (*os) rc.s = s;
  rc.format = format == "json" ? Format::json : Format::csv;
  validate(rc);
  return rc;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Partial theta function toolkit"};
  app.name("ptheta");
  RunConfig rc;
  try {
    rc = parse(argc, argv, app);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const EvalConfig cfg = detail::eval_config(rc);
  std::string text, svg;
  bool ok = true;
  try {
    if (rc.command == "eval") text = detail::eval_cmd(rc, cfg);
    else if (rc.command == "identities") text = detail::identities_cmd(rc, cfg);
    else if (rc.command == "zeros") text = detail::zeros_cmd(rc, cfg);
    else if (rc.command == "curves") text = detail::curves_cmd(rc, cfg, rc.plot ? &svg : nullptr);
    else if (rc.command == "spectrum") text = detail::spectrum_cmd(rc, cfg);
    else if (rc.command == "complex") text = detail::complex_cmd(rc, cfg);
    else text = detail::verify_cmd(rc, err, ok);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (rc.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(rc.out_path, std::ios::binary);
    if (!(f << text)) {
      err << "error: cannot write " << rc.out_path << "\n";
      return 1;
    }
    if (rc.plot) {
      const std::string p = detail::svg_path_for(rc.out_path);
      std::ofstream g(p, std::ios::binary);
      if (!(g << (svg.empty() ? emit_curve_plot({}, rc.a) : svg))) {
        err << "error: cannot write " << p << "\n";
        return 1;
      }
    }
  }
  return ok ? 0 : 1;
}

}  // namespace ptheta::cli

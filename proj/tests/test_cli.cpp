#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "ptheta/cli.hpp"

using namespace ptheta;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ptheta");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);)
    if (!l.empty()) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, EvalJsonMatchesLibrary) {
  auto r = run({"eval", "--q", "0.5", "--x", "-2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  auto a = theta(0.5, -2.0);
  EXPECT_EQ(j["value"].get<double>(), a.value);
  EXPECT_EQ(j["err"].get<double>(), a.err);
}

TEST(Cli, EvalImaginaryCsv) {
  auto r = run({"eval", "--q", "0.6", "--y", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "q,re_x,im_x,re_value,im_value,err");
  auto f = io::split_csv_line(l[1]);
  EXPECT_EQ(std::stod(f[3]), theta(0.6, std::complex<double>(0, 3)).value.real());
}

TEST(Cli, SpectrumCsvHasSixRows) {
  auto r = run({"spectrum", "--jmax", "6", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 7u);
  const double table[] = {0.309249, 0.516959, 0.630628, 0.701265, 0.749269, 0.783984};
  for (int i = 0; i < 6; ++i) {
    auto f = io::split_csv_line(l[i + 1]);
    EXPECT_EQ(f[0], "q_pos");
    EXPECT_NEAR(std::stod(f[2]), table[i], 5e-7);
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"eval", "--q", "1.5", "--x", "0"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--jmax", "0"}).code, 2);
  EXPECT_EQ(run({"spectrum"}).code, 2);
  EXPECT_EQ(run({"eval", "--x", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--q", "0.5"}).code, 2);
  EXPECT_EQ(run({"eval", "--q", "0.5", "--x", "1", "--precision", "10"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--q", "0.5", "--x", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  auto r = run({"eval", "--q", "1.5", "--x", "0"});
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify-paper"), std::string::npos);
}

TEST(Cli, ZerosBothSides) {
  auto pos = run({"zeros", "--q", "0.2", "--jmax", "4"});
  ASSERT_EQ(pos.code, 0) << pos.err;
  EXPECT_EQ(lines(pos.out).size(), 5u);
  auto neg = run({"zeros", "--q", "-0.3", "--jmax", "3", "--format", "json"});
  ASSERT_EQ(neg.code, 0) << neg.err;
  auto j = io::json::parse(neg.out);
  std::set<std::string> fams;
  for (const auto& z : j["zeros"]) fams.insert(z["family"].get<std::string>());
  EXPECT_EQ(fams, (std::set<std::string>{"eta", "zeta"}));
}

TEST(Cli, IdentitiesHold) {
  for (const char* q : {"0.4", "-0.6"}) {
    auto r = run({"identities", "--q", q, "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& row : io::json::parse(r.out)) EXPECT_TRUE(row["holds"].get<bool>()) << row.dump();
  }
}

TEST(Cli, CurvesDeterministicAndPlotted) {
  const fs::path dir = fs::temp_directory_path() / "ptheta_cli_test";
  fs::create_directories(dir);
  const std::string out = (dir / "curves.csv").string();
  auto a = run({"curves", "--q", "0.9", "--jmax", "2", "--a", "1,1.5,2", "--out", out, "--plot"});
  ASSERT_EQ(a.code, 0) << a.err;
  std::ifstream f(out), g((dir / "curves.svg").string());
  std::stringstream csv, svg;
  csv << f.rdbuf();
  svg << g.rdbuf();
  EXPECT_EQ(lines(csv.str()).front(), "regime,index,branch,q,x");
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
  auto b = run({"curves", "--q", "0.9", "--jmax", "2"});
  EXPECT_EQ(b.out, csv.str());
  fs::remove_all(dir);
}

TEST(Cli, ComplexTracksAndAudit) {
  auto t = run({"complex", "--q", "0.8", "--jmax", "1"});
  ASSERT_EQ(t.code, 0) << t.err;
  auto l = lines(t.out);
  EXPECT_EQ(l.front(), "pair_index,q,re_x,im_x,crossed_flag");
  EXPECT_EQ(io::split_csv_line(l.back()).back(), "1");
  auto a = run({"complex", "--q", "0.41", "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = io::json::parse(a.out);
  EXPECT_EQ(j["pair_count"].get<int>(), 1);
  EXPECT_EQ(j["violations"].get<int>(), 0);
}

TEST(Cli, VerifyPaperReport) {
  auto r = run({"verify-paper", "--format", "json"});
  // Two criteria compare against truncated published values and fail.
  EXPECT_EQ(r.code, 1);
  auto j = io::json::parse(r.out);
  ASSERT_EQ(j["checks"].size(), 12u);
  std::set<std::string> names, failed;
  for (const auto& c : j["checks"]) {
    names.insert(c["name"].get<std::string>());
    for (const char* key : {"expected", "computed", "tolerance", "pass", "runtime_seconds"})
      EXPECT_TRUE(c.contains(key)) << key;
    if (!c["pass"].get<bool>()) failed.insert(c["name"].get<std::string>());
  }
  EXPECT_EQ(names.size(), 12u);
  EXPECT_EQ(failed, (std::set<std::string>{"spectrum_qneg_table", "double_zeros_qneg"}));
  EXPECT_EQ(j["summary"]["pass"].get<int>(), 10);
  EXPECT_EQ(j["summary"]["fail"].get<int>(), 2);
  EXPECT_NE(r.err.find("10 passed, 2 failed"), std::string::npos);
}

TEST(Verify, DeterministicGivenSeed) {
  verify::VerifyOptions vo;
  vo.only = {1, 9, 11};
  auto a = verify::verify_paper(vo).to_json(false);
  auto b = verify::verify_paper(vo).to_json(false);
  EXPECT_EQ(io::dump(a), io::dump(b));
}

TEST(Verify, RelaxedPrecisionIdentitySuite) {
  verify::VerifyOptions vo;
  vo.precision = 15;
  vo.only = {9};
  auto rep = verify::verify_paper(vo);
  ASSERT_EQ(rep.checks.size(), 1u);
  EXPECT_TRUE(rep.checks[0].pass) << rep.checks[0].detail;
}

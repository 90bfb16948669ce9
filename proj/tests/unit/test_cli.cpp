#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "perisolve/cli.hpp"
#include "perisolve/io.hpp"
#include "test_support.hpp"

using namespace perisolve;
namespace fs = std::filesystem;

namespace {

Vec scalar(Complex z) {
  Vec v(1);
  v(0) = z;
  return v;
}

Mat scalar_mat(Complex z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return m;
}

// x' = -x + cos t.
ProblemFile cosine_problem() {
  TrigPolynomial f(1);
  f.set_coeff(1, scalar(0.5));
  f.set_coeff(-1, scalar(0.5));
  return {ProblemSpec(1, 1, scalar_mat(-1.0), DelaySpec(1, 1)), f};
}

// x' = 0 with constant forcing: resonant at k = 0.
ProblemFile resonant_problem() {
  return {ProblemSpec(1, 1, scalar_mat(0.0), DelaySpec(1, 1)),
          TrigPolynomial::constant(scalar(1.0))};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() /
                   fs::path("perisolve_cli_" +
                            std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string write_problem(const TempDir& dir, const ProblemFile& pf,
                          const std::string& name) {
  const std::string path = dir.file(name);
  std::ofstream out(path);
  out << problem_to_json(pf).dump(2);
  return path;
}

int run_tokens(const std::vector<std::string>& tokens, std::ostream& out,
               std::ostream& err) {
  return run(parse_args(tokens), out, err);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_args builds the expected configs") {
  const RunConfig solve_cfg =
      parse_args({"solve", "--problem", "p.json", "--modes", "256", "--out",
                  "u.csv"});
  CHECK(solve_cfg.command == RunConfig::Command::Solve);
  CHECK(solve_cfg.modes == 256);
  CHECK(solve_cfg.problem_path == "p.json");
  CHECK(solve_cfg.out_csv == "u.csv");

  const RunConfig audit_cfg = parse_args(
      {"audit", "--problem", "p.json", "--kmax", "100000", "--report",
       "a.json"});
  CHECK(audit_cfg.command == RunConfig::Command::Audit);
  CHECK(audit_cfg.kmax == 100000);
  CHECK(audit_cfg.report_path == "a.json");
}

TEST_CASE("bad arguments raise usage errors") {
  CHECK_THROWS_AS(parse_args({"solve", "--problem", "p.json", "--modes", "-1"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"solve", "--problem", "p.json", "--modes", "4",
                              "--frobnicate"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({}), UsageError);
  CHECK_THROWS_AS(parse_args({"warble"}), UsageError);
  CHECK_THROWS_AS(parse_args({"oracle", "--problem", "p.json", "--grid", "7"}),
                  UsageError);
}

TEST_CASE("solve writes a parsable CSV") {
  TempDir dir;
  const std::string problem = write_problem(dir, cosine_problem(), "p.json");
  const std::string csv = dir.file("u.csv");
  std::ostringstream out, err;
  const int code = run_tokens({"solve", "--problem", problem, "--modes", "8",
                               "--grid", "64", "--out", csv},
                              out, err);
  CHECK(code == kExitSuccess);
  const auto [times, samples] = read_solution_csv(csv);
  REQUIRE(samples.size() == 64);
  double worst = 0.0;
  for (std::size_t m = 0; m < samples.size(); ++m) {
    const double expect =
        0.5 * (std::cos(times[m]) + std::sin(times[m]));
    worst = std::max(worst, std::abs(samples[m](0) - Complex(expect, 0.0)));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("resonant problems raise Resonance out of run") {
  TempDir dir;
  const std::string problem = write_problem(dir, resonant_problem(), "r.json");
  std::ostringstream out, err;
  CHECK_THROWS_AS(run_tokens({"solve", "--problem", problem, "--modes", "4"},
                             out, err),
                  Resonance);
}

TEST_CASE("verify reports rounding-level defects on the cosine problem") {
  TempDir dir;
  const std::string problem = write_problem(dir, cosine_problem(), "p.json");
  const std::string report_path = dir.file("report.json");
  std::ostringstream out, err;
  const int code =
      run_tokens({"verify", "--problem", problem, "--modes", "8", "--grid",
                  "128", "--report", report_path},
                 out, err);
  CHECK(code == kExitSuccess);
  std::ifstream in(report_path);
  Json report;
  in >> report;
  CHECK(report.at("coeff_defect").get<double>() <= 1e-10);
  CHECK(report.at("multiplier_gap").get<double>() == 0.0);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("uniqueness_min_sigma").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("besov command prints the norm then the block table") {
  TempDir dir;
  const std::string fpath = dir.file("f.json");
  {
    std::ofstream out(fpath);
    out << trig_to_json(TrigPolynomial::constant(scalar(1.0))).dump();
  }
  std::ostringstream out, err;
  const int code = run_tokens({"besov", "--function", fpath, "--s", "1",
                               "--p", "2", "--q", "2"},
                              out, err);
  CHECK(code == kExitSuccess);
  std::istringstream lines(out.str());
  std::string first;
  std::getline(lines, first);
  CHECK(std::stod(first) ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "j,weight,block_norm,contribution");
}

TEST_CASE("scan reports margins for every frequency in range") {
  TempDir dir;
  const std::string problem = write_problem(dir, cosine_problem(), "p.json");
  std::ostringstream out, err;
  const int code =
      run_tokens({"scan", "--problem", problem, "--modes", "3"}, out, err);
  CHECK(code == kExitSuccess);
  const Json report = Json::parse(out.str());
  CHECK(report.at("rows").size() == 7);
  CHECK(report.at("min_sigma").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("audit command emits all four sections") {
  TempDir dir;
  const std::string problem = write_problem(dir, cosine_problem(), "p.json");
  const std::string report_path = dir.file("audit.json");
  std::ostringstream out, err;
  const int code = run_tokens({"audit", "--problem", problem, "--kmax", "64",
                               "--report", report_path},
                              out, err);
  CHECK(code == kExitSuccess);
  std::ifstream in(report_path);
  Json report;
  in >> report;
  CHECK(report.contains("step1"));
  CHECK(report.contains("step2"));
  CHECK(report.at("step3").at("pass").get<bool>());
  CHECK(report.at("fourier_type").at(0).at("ratio").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle command writes the same CSV layout") {
  TempDir dir;
  const std::string problem = write_problem(dir, cosine_problem(), "p.json");
  const std::string csv = dir.file("fd.csv");
  std::ostringstream out, err;
  const int code = run_tokens({"oracle", "--problem", problem, "--grid", "128",
                               "--out", csv},
                              out, err);
  CHECK(code == kExitSuccess);
  const auto [times, samples] = read_solution_csv(csv);
  CHECK(samples.size() == 128);
  double worst = 0.0;
  for (std::size_t m = 0; m < samples.size(); ++m) {
    const double expect =
        0.5 * (std::cos(times[m]) + std::sin(times[m]));
    worst = std::max(worst, std::abs(samples[m](0) - Complex(expect, 0.0)));
  }
  CHECK(worst < 1e-3);
}

}  // TEST_SUITE

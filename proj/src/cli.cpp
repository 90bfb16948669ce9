#include "perisolve/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "perisolve/audit.hpp"
#include "perisolve/besov.hpp"
#include "perisolve/fd.hpp"
#include "perisolve/io.hpp"
#include "perisolve/solve.hpp"

namespace perisolve {

namespace {

int next_pow2_grid(int max_frequency, int floor_grid) {
  int grid = floor_grid;
  while (grid <= 2 * max_frequency) grid *= 2;
  return grid;
}

const TrigPolynomial& require_forcing(const ProblemFile& pf) {
  if (!pf.forcing)
    throw UsageError("problem file carries no forcing term");
  return *pf.forcing;
}

void write_json(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open report file: " + path);
  file << j.dump(2) << "\n";
}

double sanitize(double x) { return std::isfinite(x) ? x : 1e308; }

int run_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load_problem(config.problem_path);
  const TrigPolynomial& f = require_forcing(pf);
  const PeriodicSolution sol =
      solve(pf.problem, f, config.modes, config.cond_limit);
  const int grid = config.grid > 0
                       ? config.grid
                       : next_pow2_grid(sol.u.max_frequency(), 64);
  if (!config.out_csv.empty())
    write_solution_csv(config.out_csv, sample_rows(sol.u, grid));
  if (!config.solution_json.empty())
    write_json(config.solution_json, trig_to_json(sol.u), out);
  if (config.out_csv.empty() && config.solution_json.empty())
    out << trig_to_json(sol.u).dump(2) << "\n";
  err << "solve: residual_coeff=" << format_17g(sol.residual_coeff)
      << " resonance_margin=" << format_17g(sanitize(sol.resonance_margin))
      << "\n";
  return kExitSuccess;
}

int run_oracle(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load_problem(config.problem_path);
  const TrigPolynomial& f = require_forcing(pf);
  if (config.grid <= 0) throw UsageError("oracle needs --grid");
  const FdSolution fd = solve_fd(pf.problem, f, config.grid);
  if (!config.out_csv.empty()) {
    write_solution_csv(config.out_csv, fd.samples);
  } else {
    Json j{{"grid", fd.grid_size},
           {"cond_estimate", sanitize(fd.cond_estimate)},
           {"backward_error", sanitize(fd.backward_error)}};
    out << j.dump(2) << "\n";
  }
  err << "oracle: cond_estimate=" << format_17g(sanitize(fd.cond_estimate))
      << " backward_error=" << format_17g(fd.backward_error) << "\n";
  return kExitSuccess;
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ProblemFile pf = load_problem(config.problem_path);
  const TrigPolynomial& f = require_forcing(pf);
  const PeriodicSolution sol =
      solve(pf.problem, f, config.modes, config.cond_limit);
  const Residual res = residual(pf.problem, sol.u, f);
  const int grid = config.grid > 0
                       ? config.grid
                       : next_pow2_grid(f.max_frequency(), 64);
  const FdSolution fd = solve_fd(pf.problem, f, grid);
  const double fd_error = compare(fd, sol);
  const double probe = uniqueness_probe(pf.problem, config.modes);

  // Solution coefficients must match the resolvent family applied as a
  // multiplier; the solve path is that same product.
  OperatorSequence family{"N_k", {}};
  for (const auto& [k, v] : f.coeffs())
    family.values.emplace(k, resolvent(pf.problem, k, config.cond_limit).N);
  const double multiplier_gap =
      coeff_distance(multiplier_apply(family, f), sol.u);

  Json report{{"command", "verify"},
              {"problem", config.problem_path},
              {"modes", config.modes},
              {"grid", grid},
              {"coeff_defect", res.coeff_defect},
              {"grid_defect", res.grid_defect},
              {"fd_sup_error", fd_error},
              {"fd_cond_estimate", sanitize(fd.cond_estimate)},
              {"fd_backward_error", fd.backward_error},
              {"multiplier_gap", multiplier_gap},
              {"resonance_margin", sanitize(sol.resonance_margin)},
              {"uniqueness_min_sigma", sanitize(probe)},
              {"coeff_tol", config.coeff_tol},
              {"grid_tol", config.grid_tol},
              {"pass", res.coeff_defect <= config.coeff_tol &&
                           res.grid_defect <= config.grid_tol}};
  write_json(config.report_path, report, out);
  return kExitSuccess;
}

int run_audit(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ProblemFile pf = load_problem(config.problem_path);
  const int K = config.kmax;
  const StepThreeAudit step3 =
      step3_audit(pf.problem, K, config.cond_limit, config.stability_tol);
  Json report{{"command", "audit"},
              {"problem", config.problem_path},
              {"kmax", K},
              {"step1", audit_to_json(step1_audit(pf.problem.order, K,
                                                  config.stability_tol))},
              {"step2", audit_to_json(step2_audit(pf.problem.order, K))},
              {"step3", step3_to_json(step3)}};
  if (pf.forcing && !pf.forcing->is_zero()) {
    const int grid = next_pow2_grid(pf.forcing->max_frequency(), 64);
    Json ft = Json::array();
    for (double r : {2.0, 1.5}) {
      const double ratio = fourier_type_ratio(*pf.forcing, r, grid);
      ft.push_back(Json{{"r", r},
                        {"r_conjugate", r / (r - 1.0)},
                        {"ratio", ratio},
                        {"pass", ratio <= 1.0 + 1e-9}});
    }
    report["fourier_type"] = std::move(ft);
  }
  write_json(config.report_path, report, out);
  return kExitSuccess;
}

int run_besov(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::ifstream in(config.function_path);
  if (!in) throw UsageError("cannot open function file: " + config.function_path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidSpec("bad JSON in " + config.function_path + ": " + e.what());
  }
  const TrigPolynomial f = trig_from_json(j);
  int jmax = config.jmax;
  if (jmax < 0) {
    jmax = 0;
    while (std::exp2(jmax) < f.max_frequency()) ++jmax;
  }
  const DyadicPartition part = build_partition(jmax);
  const int grid = config.grid > 0 ? config.grid
                                   : next_pow2_grid(f.max_frequency(), 64);
  const BesovParams params{config.s, config.p, config.q};
  const auto blocks = besov_blocks(f, params, part, grid);
  const double norm = besov_norm(f, params, part, grid);
  out << format_17g(norm) << "\n";
  out << "j,weight,block_norm,contribution\n";
  for (const auto& row : blocks)
    out << row.j << "," << format_17g(row.weight) << ","
        << format_17g(row.block_norm) << ","
        << format_17g(row.weight * row.block_norm) << "\n";
  if (!config.report_path.empty()) {
    Json rows = Json::array();
    for (const auto& row : blocks)
      rows.push_back(Json{{"j", row.j},
                          {"weight", row.weight},
                          {"block_norm", row.block_norm}});
    write_json(config.report_path,
               Json{{"command", "besov"},
                    {"s", config.s},
                    {"p", config.p},
                    {"q", config.q},
                    {"jmax", jmax},
                    {"grid", grid},
                    {"norm", norm},
                    {"blocks", std::move(rows)}},
               out);
  }
  return kExitSuccess;
}

int run_scan(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ProblemFile pf = load_problem(config.problem_path);
  const auto rows = resonance_scan(pf.problem, config.modes);
  Json jrows = Json::array();
  for (const auto& row : rows)
    jrows.push_back(Json{{"k", row.k},
                         {"sigma_min", row.sigma_min},
                         {"rcond", row.rcond}});
  double min_sigma = rows.empty() ? 0.0 : rows.front().sigma_min;
  for (const auto& row : rows) min_sigma = std::min(min_sigma, row.sigma_min);
  Json report{{"command", "scan"},
              {"problem", config.problem_path},
              {"modes", config.modes},
              {"min_sigma", min_sigma},
              {"rows", std::move(jrows)}};
  write_json(config.report_path, report, out);
  return kExitSuccess;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"Fourier-spectral solver and audit harness for periodic "
               "delay differential equations"};
  app.require_subcommand(1);

  auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("--problem", config.problem_path, "problem JSON document")
        ->required();
  };
  auto add_tols = [&](CLI::App* cmd) {
    cmd->add_option("--coeff-tol", config.coeff_tol, "coefficient residual tolerance");
    cmd->add_option("--grid-tol", config.grid_tol, "time-domain residual tolerance");
    cmd->add_option("--cond-limit", config.cond_limit, "resolvent condition limit");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve for the periodic solution");
  add_problem(solve_cmd);
  solve_cmd->add_option("--modes", config.modes, "frequency truncation")->required();
  solve_cmd->add_option("--grid", config.grid, "output sampling grid");
  solve_cmd->add_option("--out", config.out_csv, "solution CSV path");
  solve_cmd->add_option("--solution-json", config.solution_json, "solution JSON path");
  add_tols(solve_cmd);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "finite-difference reference solve");
  add_problem(oracle_cmd);
  oracle_cmd->add_option("--grid", config.grid, "collocation grid size")->required();
  oracle_cmd->add_option("--out", config.out_csv, "oracle CSV path");
  add_tols(oracle_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "solve, residual and oracle comparison");
  add_problem(verify_cmd);
  verify_cmd->add_option("--modes", config.modes, "frequency truncation")->required();
  verify_cmd->add_option("--grid", config.grid, "oracle grid size");
  verify_cmd->add_option("--report", config.report_path, "report JSON path");
  add_tols(verify_cmd);

  CLI::App* audit_cmd = app.add_subcommand("audit", "multiplier-theory audits");
  add_problem(audit_cmd);
  audit_cmd->add_option("--kmax", config.kmax, "audit frequency range")->required();
  audit_cmd->add_option("--report", config.report_path, "report JSON path");
  audit_cmd->add_option("--stability-tol", config.stability_tol, "doubling stability tolerance");
  add_tols(audit_cmd);

  CLI::App* besov_cmd = app.add_subcommand("besov", "Besov norm with block table");
  besov_cmd->add_option("--function", config.function_path, "trig polynomial JSON")->required();
  besov_cmd->add_option("--s", config.s, "smoothness index");
  besov_cmd->add_option("--p", config.p, "integral exponent");
  besov_cmd->add_option("--q", config.q, "block exponent");
  besov_cmd->add_option("--jmax", config.jmax, "partition length");
  besov_cmd->add_option("--grid", config.grid, "quadrature grid");
  besov_cmd->add_option("--report", config.report_path, "report JSON path");

  CLI::App* scan_cmd = app.add_subcommand("scan", "per-frequency resonance margins");
  add_problem(scan_cmd);
  scan_cmd->add_option("--modes", config.modes, "scan range")->required();
  scan_cmd->add_option("--report", config.report_path, "report JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (besov_cmd->parsed() && besov_cmd->count("--jmax") > 0 && config.jmax < 0)
    throw UsageError("--jmax must be nonnegative");

  if (solve_cmd->parsed()) config.command = RunConfig::Command::Solve;
  if (oracle_cmd->parsed()) config.command = RunConfig::Command::Oracle;
  if (verify_cmd->parsed()) config.command = RunConfig::Command::Verify;
  if (audit_cmd->parsed()) config.command = RunConfig::Command::Audit;
  if (besov_cmd->parsed()) config.command = RunConfig::Command::Besov;
  if (scan_cmd->parsed()) config.command = RunConfig::Command::Scan;

  const bool needs_modes = solve_cmd->parsed() || verify_cmd->parsed() ||
                           scan_cmd->parsed();
  if (needs_modes && config.modes < 1)
    throw UsageError("--modes must be a positive integer");
  if (oracle_cmd->parsed() && (config.grid < 8 || config.grid % 2 != 0))
    throw UsageError("--grid must be even and >= 8");
  if (config.grid < 0) throw UsageError("--grid must be positive");
  if (audit_cmd->parsed() && config.kmax < 8)
    throw UsageError("--kmax must be >= 8");
  if (config.coeff_tol <= 0 || config.grid_tol <= 0 || config.cond_limit <= 0 ||
      config.stability_tol <= 0)
    throw UsageError("tolerances must be positive");
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case RunConfig::Command::Solve:
      return run_solve(config, out, err);
    case RunConfig::Command::Oracle:
      return run_oracle(config, out, err);
    case RunConfig::Command::Verify:
      return run_verify(config, out, err);
    case RunConfig::Command::Audit:
      return run_audit(config, out, err);
    case RunConfig::Command::Besov:
      return run_besov(config, out, err);
    case RunConfig::Command::Scan:
      return run_scan(config, out, err);
  }
  throw UsageError("unknown command");
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig config = parse_args(args);
    return run(config, std::cout, std::cerr);
  } catch (const HelpRequested& h) {
    std::cout << h.text();
    return kExitSuccess;
  } catch (const Resonance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResonance;
  } catch (const SingularSystem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResonance;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace perisolve

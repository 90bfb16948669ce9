#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perisolve {

// Raised when the user asked for --help; carries the help text.
class HelpRequested {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

struct RunConfig {
  enum class Command { Solve, Oracle, Verify, Audit, Besov, Scan };

  Command command = Command::Solve;
  std::string problem_path;
  std::string function_path;  // besov input
  std::string out_csv;
  std::string solution_json;
  std::string report_path;

  int modes = 0;  // frequency truncation K
  int grid = 0;   // time grid M (0 = choose from the data)
  int kmax = 0;   // audit range
  int jmax = -1;  // besov partition length (-1 = choose from the data)

  double s = 1.0;
  double p = 2.0;
  double q = 2.0;

  double coeff_tol = 1e-9;
  double grid_tol = 1e-8;
  double stability_tol = 1e-3;
  double cond_limit = 1e12;
};

// Exit codes: 0 success, 2 resonance or singular oracle system, 3 usage or
// input errors.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitResonance = 2;
inline constexpr int kExitUsage = 3;

// Tokens exclude the program name. Throws UsageError on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes one command; data goes to files or `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse + run + exception-to-exit-code mapping.
int cli_main(int argc, char** argv);

}  // namespace perisolve

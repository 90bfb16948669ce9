#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "perisolve/audit.hpp"
#include "perisolve/solve.hpp"
#include "perisolve/symbol.hpp"

namespace perisolve {

using Json = nlohmann::ordered_json;

// Matrices travel as {"re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// {"dim": d, "coeffs": [{"k": int, "re": [d], "im": [d]}]} with ascending k.
Json trig_to_json(const TrigPolynomial& f);
TrigPolynomial trig_from_json(const Json& j);

// {"dim", "periods", "discrete": [{"r", "B"}], "kernel": {"grid_count",
// "values"}}; "kernel" may be absent or null.
Json delay_to_json(const DelaySpec& L);
DelaySpec delay_from_json(const Json& j);

// One problem document: {"n", "dim", "A", "delay", "forcing"}; forcing is
// optional for commands that do not need it.
struct ProblemFile {
  ProblemSpec problem;
  std::optional<TrigPolynomial> forcing;
};

Json problem_to_json(const ProblemFile& pf);
ProblemFile problem_from_json(const Json& j);
ProblemFile load_problem(const std::string& path);

Json audit_to_json(const AuditReport& r);
Json step3_to_json(const StepThreeAudit& a);
Json family_to_json(const SymbolFamily& fam);

// CSV with header t,re_u1,im_u1,...,re_ud,im_ud; 17 significant digits; one
// row per uniform node.
void write_solution_csv(const std::string& path,
                        const std::vector<Vec>& samples);
std::vector<Vec> sample_rows(const TrigPolynomial& u, int grid);
// Returns (times, samples).
std::pair<std::vector<double>, std::vector<Vec>> read_solution_csv(
    const std::string& path);

std::string format_17g(double x);

}  // namespace perisolve

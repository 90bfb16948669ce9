#include "perisolve/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace perisolve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void bad_input(const std::string& what) {
  throw InvalidSpec("malformed input: " + what);
}

double finite_or_sentinel(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? 1e308 : -1e308;
}
}  // namespace

std::string format_17g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json matrix_to_json(const Mat& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re")) bad_input("matrix needs re/im");
  const Json& re = j.at("re");
  if (!re.is_array() || re.empty()) bad_input("matrix re part");
  const std::size_t rows = re.size();
  const std::size_t cols = re.at(0).size();
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (re.at(r).size() != cols) bad_input("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const double real = re.at(r).at(c).get<double>();
      const double imag =
          has_im ? j.at("im").at(r).at(c).get<double>() : 0.0;
      m(r, c) = Complex(real, imag);
    }
  }
  return m;
}

Json trig_to_json(const TrigPolynomial& f) {
  Json coeffs = Json::array();
  for (const auto& [k, v] : f.coeffs()) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      re.push_back(v(i).real());
      im.push_back(v(i).imag());
    }
    coeffs.push_back(
        Json{{"k", k}, {"re", std::move(re)}, {"im", std::move(im)}});
  }
  return Json{{"dim", f.dim()}, {"coeffs", std::move(coeffs)}};
}

TrigPolynomial trig_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) bad_input("trig polynomial");
  TrigPolynomial f(j.at("dim").get<int>());
  if (!j.contains("coeffs")) return f;
  for (const Json& entry : j.at("coeffs")) {
    const int k = entry.at("k").get<int>();
    const Json& re = entry.at("re");
    if (static_cast<int>(re.size()) != f.dim())
      bad_input("coefficient length");
    Vec v(f.dim());
    const bool has_im = entry.contains("im") && !entry.at("im").is_null();
    for (int i = 0; i < f.dim(); ++i)
      v(i) = Complex(re.at(i).get<double>(),
                     has_im ? entry.at("im").at(i).get<double>() : 0.0);
    f.set_coeff(k, v);
  }
  return f;
}

Json delay_to_json(const DelaySpec& L) {
  Json discrete = Json::array();
  for (const auto& term : L.discrete_terms())
    discrete.push_back(Json{{"r", term.lag}, {"B", matrix_to_json(term.B)}});
  Json out{{"dim", L.dim()},
           {"periods", L.periods()},
           {"discrete", std::move(discrete)}};
  if (L.kernel()) {
    Json values = Json::array();
    for (const Mat& m : L.kernel()->values) values.push_back(matrix_to_json(m));
    out["kernel"] = Json{{"grid_count", L.kernel()->grid_count},
                         {"values", std::move(values)}};
  }
  return out;
}

DelaySpec delay_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) bad_input("delay spec");
  DelaySpec L(j.at("dim").get<int>(), j.value("periods", 1));
  if (j.contains("discrete") && !j.at("discrete").is_null())
    for (const Json& term : j.at("discrete"))
      L.add_discrete(term.at("r").get<double>(),
                     matrix_from_json(term.at("B")));
  if (j.contains("kernel") && !j.at("kernel").is_null()) {
    const Json& kj = j.at("kernel");
    std::vector<Mat> values;
    for (const Json& mv : kj.at("values"))
      values.push_back(matrix_from_json(mv));
    if (kj.contains("grid_count") &&
        kj.at("grid_count").get<int>() != static_cast<int>(values.size()))
      bad_input("kernel grid_count does not match values");
    L.set_kernel(std::move(values));
  }
  return L;
}

Json problem_to_json(const ProblemFile& pf) {
  Json out{{"n", pf.problem.order},
           {"dim", pf.problem.dim},
           {"A", matrix_to_json(pf.problem.A)},
           {"delay", delay_to_json(pf.problem.delay)}};
  if (pf.forcing) out["forcing"] = trig_to_json(*pf.forcing);
  return out;
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("dim"))
    bad_input("problem document needs n and dim");
  const int dim = j.at("dim").get<int>();
  DelaySpec delay = j.contains("delay") && !j.at("delay").is_null()
                        ? delay_from_json(j.at("delay"))
                        : DelaySpec(dim, 1);
  ProblemSpec problem(j.at("n").get<int>(), dim, matrix_from_json(j.at("A")),
                      std::move(delay));
  std::optional<TrigPolynomial> forcing;
  if (j.contains("forcing") && !j.at("forcing").is_null())
    forcing = trig_from_json(j.at("forcing"));
  return {std::move(problem), std::move(forcing)};
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open problem file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidSpec("bad JSON in " + path + ": " + e.what());
  }
  return problem_from_json(j);
}

Json audit_to_json(const AuditReport& r) {
  Json rows = Json::array();
  for (const AuditRow& row : r.rows)
    rows.push_back(Json{{"k", row.k},
                        {"value", finite_or_sentinel(row.value)},
                        {"discrepancy", finite_or_sentinel(row.discrepancy)}});
  Json out{{"label", r.label},
           {"sup_norm", finite_or_sentinel(r.sup_norm)},
           {"sup_diff", finite_or_sentinel(r.sup_diff)},
           {"stability", finite_or_sentinel(r.stability)},
           {"rows", std::move(rows)},
           {"pass", r.pass}};
  for (const auto& [key, value] : r.extra)
    out[key] = finite_or_sentinel(value);
  return out;
}

Json step3_to_json(const StepThreeAudit& a) {
  return Json{{"n_family", audit_to_json(a.n_family)},
              {"s_family", audit_to_json(a.s_family)},
              {"t_family", audit_to_json(a.t_family)},
              {"p_family", audit_to_json(a.p_family)},
              {"identity", audit_to_json(a.identity)},
              {"pass", a.pass}};
}

Json family_to_json(const SymbolFamily& fam) {
  Json records = Json::array();
  for (const auto& [k, rec] : fam.records)
    records.push_back(Json{{"k", k},
                           {"D", matrix_to_json(rec.D)},
                           {"N", matrix_to_json(rec.N)},
                           {"S", matrix_to_json(rec.S)},
                           {"T", matrix_to_json(rec.T)},
                           {"P", matrix_to_json(rec.P)},
                           {"cond", rec.cond}});
  return Json{{"K", fam.range}, {"records", std::move(records)}};
}

std::vector<Vec> sample_rows(const TrigPolynomial& u, int grid) {
  std::vector<Vec> rows;
  rows.reserve(grid);
  for (int m = 0; m < grid; ++m)
    rows.push_back(synthesize(u, kTwoPi * m / grid));
  return rows;
}

void write_solution_csv(const std::string& path,
                        const std::vector<Vec>& samples) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  if (samples.empty()) throw InvalidSpec("no samples to write");
  const int d = static_cast<int>(samples.front().size());
  out << "t";
  for (int i = 1; i <= d; ++i) out << ",re_u" << i << ",im_u" << i;
  out << "\n";
  const int M = static_cast<int>(samples.size());
  for (int m = 0; m < M; ++m) {
    out << format_17g(kTwoPi * m / M);
    for (int i = 0; i < d; ++i)
      out << "," << format_17g(samples[m](i).real()) << ","
          << format_17g(samples[m](i).imag());
    out << "\n";
  }
}

std::pair<std::vector<double>, std::vector<Vec>> read_solution_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) bad_input("empty CSV");
  const int columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 3 || (columns - 1) % 2 != 0) bad_input("CSV header layout");
  const int d = (columns - 1) / 2;
  std::vector<double> times;
  std::vector<Vec> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (static_cast<int>(values.size()) != columns) bad_input("CSV row width");
    times.push_back(values[0]);
    Vec v(d);
    for (int i = 0; i < d; ++i)
      v(i) = Complex(values[1 + 2 * i], values[2 + 2 * i]);
    samples.push_back(std::move(v));
  }
  return {std::move(times), std::move(samples)};
}

}  // namespace perisolve

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <utility>
#include <vector>

#include "perisolve/audit.hpp"
#include "perisolve/besov.hpp"
#include "perisolve/fd.hpp"
#include "perisolve/io.hpp"
#include "perisolve/solve.hpp"

namespace py = pybind11;
using namespace perisolve;

namespace {

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

SampledFunction samples_from_array(
    const Eigen::Ref<const Eigen::MatrixXcd>& rows) {
  SampledFunction g{static_cast<int>(rows.cols()), {}};
  g.samples.reserve(rows.rows());
  for (Eigen::Index m = 0; m < rows.rows(); ++m)
    g.samples.push_back(rows.row(m).transpose());
  return g;
}

Eigen::MatrixXcd samples_to_array(const std::vector<Vec>& samples) {
  if (samples.empty()) return {};
  Eigen::MatrixXcd rows(samples.size(), samples.front().size());
  for (std::size_t m = 0; m < samples.size(); ++m)
    rows.row(m) = samples[m].transpose();
  return rows;
}

OperatorSequence sequence_from_dict(const std::map<int, Mat>& values,
                                    const std::string& label) {
  return OperatorSequence{label, values};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Fourier-spectral solver and audit harness for 2pi-periodic solutions "
      "of nth-order linear delay differential equations";

  auto base = py::register_exception<Error>(m, "PerisolveError",
                                            PyExc_RuntimeError);
  py::register_exception<Resonance>(m, "ResonanceError", base);
  py::register_exception<SingularSystem>(m, "SingularSystemError", base);
  py::register_exception<NyquistViolation>(m, "NyquistError", base);

  py::class_<TrigPolynomial>(m, "TrigPolynomial")
      .def(py::init<int>(), py::arg("dim"))
      .def_static("constant", &TrigPolynomial::constant, py::arg("x"))
      .def_static("monomial", &TrigPolynomial::monomial, py::arg("k"),
                  py::arg("x"))
      .def_property_readonly("dim", &TrigPolynomial::dim)
      .def("coeff", &TrigPolynomial::coeff, py::arg("k"))
      .def("set_coeff", &TrigPolynomial::set_coeff, py::arg("k"), py::arg("v"))
      .def("coeffs",
           [](const TrigPolynomial& f) {
             std::map<int, Vec> out(f.coeffs().begin(), f.coeffs().end());
             return out;
           })
      .def("is_zero", &TrigPolynomial::is_zero)
      .def("max_frequency", &TrigPolynomial::max_frequency)
      .def("__call__",
           [](const TrigPolynomial& f, double t) { return synthesize(f, t); },
           py::arg("t"))
      .def("to_json",
           [](const TrigPolynomial& f) { return trig_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return trig_from_json(Json::parse(text));
      })
      .def("__add__",
           [](const TrigPolynomial& a, const TrigPolynomial& b) { return a + b; })
      .def("__sub__",
           [](const TrigPolynomial& a, const TrigPolynomial& b) { return a - b; })
      .def("__rmul__",
           [](const TrigPolynomial& f, Complex a) { return a * f; });

  m.def("analyze",
        [](const Eigen::Ref<const Eigen::MatrixXcd>& rows, int kmax) {
          return analyze(samples_from_array(rows), kmax);
        },
        py::arg("samples"), py::arg("kmax"),
        "Discrete Fourier analysis of uniform samples (rows are nodes)");
  m.def("sample",
        [](const TrigPolynomial& f, int grid) {
          return samples_to_array(sample(f, grid).samples);
        },
        py::arg("f"), py::arg("grid"));
  m.def("synthesize", &synthesize, py::arg("f"), py::arg("t"));
  m.def("derivative", &derivative, py::arg("f"), py::arg("j"));
  m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"), py::arg("grid"));
  m.def("parseval_defect", &parseval_defect, py::arg("f"), py::arg("grid"));
  m.def("coeff_distance", &coeff_distance, py::arg("a"), py::arg("b"));
  m.def("realness_defect", &realness_defect, py::arg("f"));

  py::class_<DelaySpec>(m, "DelaySpec")
      .def(py::init<int, int>(), py::arg("dim"), py::arg("periods") = 1)
      .def_property_readonly("dim", &DelaySpec::dim)
      .def_property_readonly("periods", &DelaySpec::periods)
      .def_property_readonly("horizon", &DelaySpec::horizon)
      .def("add_discrete", &DelaySpec::add_discrete, py::arg("lag"),
           py::arg("B"))
      .def("set_kernel",
           [](DelaySpec& L, const std::vector<Mat>& values) {
             L.set_kernel(values);
           },
           py::arg("values"))
      .def("is_zero", &DelaySpec::is_zero)
      .def("apply",
           [](const DelaySpec& L, const TrigPolynomial& u, double t) {
             return L.apply(HistorySegment{u, t, L.periods()});
           },
           py::arg("u"), py::arg("t"),
           "Apply the functional to the history segment of u at time t")
      .def("symbol", &DelaySpec::symbol, py::arg("k"))
      .def("kernel_quadrature_estimate", &DelaySpec::kernel_quadrature_estimate,
           py::arg("k"))
      .def("to_json",
           [](const DelaySpec& L) { return delay_to_json(L).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return delay_from_json(Json::parse(text));
      });

  m.def("verify_transfer",
        [](const DelaySpec& L, const TrigPolynomial& u, int kmax, int grid) {
          const TransferCheck check = verify_transfer(L, u, kmax, grid);
          return py::make_tuple(check.defect, check.quadrature_bound);
        },
        py::arg("delay"), py::arg("u"), py::arg("kmax"), py::arg("grid"),
        "Returns (defect, quadrature_bound) of the symbol transfer identity");

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init<int, int, Mat, DelaySpec>(), py::arg("order"),
           py::arg("dim"), py::arg("A"), py::arg("delay"))
      .def_readonly("order", &ProblemSpec::order)
      .def_readonly("dim", &ProblemSpec::dim)
      .def_readonly("A", &ProblemSpec::A)
      .def_readonly("delay", &ProblemSpec::delay);

  m.def("char_matrix", &char_matrix, py::arg("problem"), py::arg("k"));
  m.def("resolvent",
        [](const ProblemSpec& p, int k, double cond_limit) {
          const Resolvent r = resolvent(p, k, cond_limit);
          return py::make_tuple(r.N, r.cond);
        },
        py::arg("problem"), py::arg("k"),
        py::arg("cond_limit") = kDefaultCondLimit,
        "Returns (N_k, condition number)");
  m.def("build_family",
        [](const ProblemSpec& p, int K, double cond_limit) {
          return json_to_py(family_to_json(build_family(p, K, cond_limit)));
        },
        py::arg("problem"), py::arg("K"),
        py::arg("cond_limit") = kDefaultCondLimit);
  m.def("ik_power_sum", &ik_power_sum, py::arg("n"), py::arg("k"));
  m.def("seq_a", &seq_a, py::arg("n"), py::arg("k"));
  m.def("seq_b", &seq_b, py::arg("n"), py::arg("k"));
  m.def("seq_c", &seq_c, py::arg("n"), py::arg("k"));

  m.def("audit_grid", &audit_grid, py::arg("K"), py::arg("include_zero") = true);
  m.def("m_bound_report",
        [](const std::map<int, Mat>& values, const std::string& label, int K,
           double stability_tol) {
          return json_to_py(audit_to_json(
              m_bound_report(sequence_from_dict(values, label), K,
                             stability_tol)));
        },
        py::arg("values"), py::arg("label"), py::arg("K"),
        py::arg("stability_tol") = 1e-3);
  m.def("step1_audit",
        [](int n, int K, double stability_tol) {
          return json_to_py(audit_to_json(step1_audit(n, K, stability_tol)));
        },
        py::arg("n"), py::arg("K"), py::arg("stability_tol") = 1e-3);
  m.def("step2_audit",
        [](int n, int K, double identity_tol) {
          return json_to_py(audit_to_json(step2_audit(n, K, identity_tol)));
        },
        py::arg("n"), py::arg("K"), py::arg("identity_tol") = 1e-9);
  m.def("step3_audit",
        [](const ProblemSpec& p, int K, double cond_limit,
           double stability_tol, double identity_tol) {
          return json_to_py(step3_to_json(
              step3_audit(p, K, cond_limit, stability_tol, identity_tol)));
        },
        py::arg("problem"), py::arg("K"),
        py::arg("cond_limit") = kDefaultCondLimit,
        py::arg("stability_tol") = 1e-3, py::arg("identity_tol") = 1e-9);
  m.def("fourier_type_ratio", &fourier_type_ratio, py::arg("f"), py::arg("r"),
        py::arg("grid"));
  m.def("multiplier_apply",
        [](const std::map<int, Mat>& values, const TrigPolynomial& f) {
          return multiplier_apply(sequence_from_dict(values, "M_k"), f);
        },
        py::arg("values"), py::arg("f"));

  py::class_<DyadicPartition>(m, "DyadicPartition")
      .def_readonly("jmax", &DyadicPartition::jmax)
      .def("phi", &DyadicPartition::phi, py::arg("j"), py::arg("t"));
  m.def("build_partition", &build_partition, py::arg("jmax"));
  m.def("besov_norm",
        [](const TrigPolynomial& f, double s, double p, double q, int jmax,
           int grid) {
          return besov_norm(f, {s, p, q}, build_partition(jmax), grid);
        },
        py::arg("f"), py::arg("s"), py::arg("p"), py::arg("q"),
        py::arg("jmax"), py::arg("grid"));
  m.def("besov_blocks",
        [](const TrigPolynomial& f, double s, double p, double q, int jmax,
           int grid) {
          std::vector<py::dict> rows;
          for (const BesovBlockRow& row :
               besov_blocks(f, {s, p, q}, build_partition(jmax), grid)) {
            py::dict d;
            d["j"] = row.j;
            d["weight"] = row.weight;
            d["block_norm"] = row.block_norm;
            rows.push_back(std::move(d));
          }
          return rows;
        },
        py::arg("f"), py::arg("s"), py::arg("p"), py::arg("q"),
        py::arg("jmax"), py::arg("grid"));
  m.def("lifting_ratio",
        [](const TrigPolynomial& f, double s, double p, double q, int jmax,
           int grid) {
          return lifting_ratio(f, {s, p, q}, build_partition(jmax), grid);
        },
        py::arg("f"), py::arg("s"), py::arg("p"), py::arg("q"),
        py::arg("jmax"), py::arg("grid"));

  py::class_<PeriodicSolution>(m, "PeriodicSolution")
      .def_readonly("u", &PeriodicSolution::u)
      .def_readonly("truncation", &PeriodicSolution::truncation)
      .def_readonly("residual_coeff", &PeriodicSolution::residual_coeff)
      .def_readonly("resonance_margin", &PeriodicSolution::resonance_margin);
  m.def("solve", &solve, py::arg("problem"), py::arg("f"), py::arg("K"),
        py::arg("cond_limit") = kDefaultCondLimit);
  m.def("residual",
        [](const ProblemSpec& p, const TrigPolynomial& u,
           const TrigPolynomial& f) {
          const Residual r = residual(p, u, f);
          return py::make_tuple(r.coeff_defect, r.grid_defect);
        },
        py::arg("problem"), py::arg("u"), py::arg("f"),
        "Returns (coeff_defect, grid_defect)");
  m.def("uniqueness_probe", &uniqueness_probe, py::arg("problem"),
        py::arg("K"));
  m.def("resonance_scan",
        [](const ProblemSpec& p, int K) {
          std::vector<py::dict> rows;
          for (const ResonanceScanRow& row : resonance_scan(p, K)) {
            py::dict d;
            d["k"] = row.k;
            d["sigma_min"] = row.sigma_min;
            d["rcond"] = row.rcond;
            rows.push_back(std::move(d));
          }
          return rows;
        },
        py::arg("problem"), py::arg("K"));

  py::class_<FdSolution>(m, "FdSolution")
      .def_readonly("grid_size", &FdSolution::grid_size)
      .def_property_readonly(
          "samples",
          [](const FdSolution& fd) { return samples_to_array(fd.samples); })
      .def_readonly("cond_estimate", &FdSolution::cond_estimate)
      .def_readonly("backward_error", &FdSolution::backward_error);
  m.def("solve_fd", &solve_fd, py::arg("problem"), py::arg("f"),
        py::arg("grid"));
  m.def("fd_compare", &compare, py::arg("fd"), py::arg("spectral"));
  m.def("fd_system_matrix", &fd_system_matrix, py::arg("problem"),
        py::arg("grid"));

  m.def("load_problem_json",
        [](const std::string& text) {
          ProblemFile pf = problem_from_json(Json::parse(text));
          return py::make_tuple(std::move(pf.problem), std::move(pf.forcing));
        },
        py::arg("text"),
        "Parses a problem document; returns (problem, forcing or None)");
  m.def("problem_to_json",
        [](const ProblemSpec& p, std::optional<TrigPolynomial> forcing) {
          return problem_to_json({p, std::move(forcing)}).dump(2);
        },
        py::arg("problem"), py::arg("forcing") = std::nullopt);
}

#include "perisolve/audit.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "perisolve/parallel.hpp"

namespace perisolve {

double operator_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

std::vector<int> audit_grid(int K, bool include_zero) {
  std::set<int> grid;
  if (include_zero) grid.insert(0);
  const int dense = std::min(K, 64);
  for (int k = 1; k <= dense; ++k) {
    grid.insert(k);
    grid.insert(-k);
  }
  for (long long k = 128; k < K; k *= 2) {
    grid.insert(static_cast<int>(k));
    grid.insert(static_cast<int>(-k));
  }
  if (K > 64) {
    grid.insert(K);
    grid.insert(-K);
  }
  return {grid.begin(), grid.end()};
}

namespace {

// Everything a K-audit reads: the K grid, the K/2 grid used by the
// stability score, and the +1 neighbours of both.
std::set<int> audit_support(int K, bool include_zero) {
  std::set<int> needed;
  for (int bound : {K, K / 2})
    for (int k : audit_grid(std::max(bound, 1), include_zero)) {
      needed.insert(k);
      needed.insert(k + 1);
    }
  return needed;
}

}  // namespace

OperatorSequence sequence_on_grid(const std::string& label, int K,
                                  const std::function<Mat(int)>& generator,
                                  bool include_zero) {
  OperatorSequence seq{label, {}};
  for (int k : audit_support(K, include_zero))
    seq.values.emplace(k, generator(k));
  return seq;
}

namespace {

const Mat& lookup(const OperatorSequence& seq, int k) {
  auto it = seq.values.find(k);
  if (it == seq.values.end()) throw MissingFrequency(k);
  return it->second;
}

struct Suprema {
  double norm = 0.0;
  double diff = 0.0;
};

Suprema grid_suprema(const OperatorSequence& seq, int K) {
  Suprema s;
  for (int k : audit_grid(K)) {
    s.norm = std::max(s.norm, operator_norm(lookup(seq, k)));
    const double d =
        std::abs(k) * operator_norm(lookup(seq, k + 1) - lookup(seq, k));
    s.diff = std::max(s.diff, d);
  }
  return s;
}

// Relative change between the K and K/2 evaluations; a zero baseline with a
// nonzero full value reports the full value itself.
double rel_change(double full, double half) {
  if (full == half) return 0.0;
  return std::abs(full - half) / (half > 0.0 ? half : 1.0);
}

}  // namespace

AuditReport m_bound_report(const OperatorSequence& seq, int K,
                           double stability_tol) {
  if (K < 4) throw RangeTooSmall("m-bound audit needs K >= 4");
  AuditReport report;
  report.label = seq.label;
  const Suprema full = grid_suprema(seq, K);
  const Suprema half = grid_suprema(seq, K / 2);
  report.sup_norm = full.norm;
  report.sup_diff = full.diff;
  report.stability = std::max(rel_change(full.norm, half.norm),
                              rel_change(full.diff, half.diff));
  for (int k : audit_grid(K)) {
    const double nk = operator_norm(lookup(seq, k));
    const double dk =
        std::abs(k) * operator_norm(lookup(seq, k + 1) - lookup(seq, k));
    report.rows.push_back({k, nk, dk});
  }
  report.pass = std::isfinite(report.sup_norm) &&
                std::isfinite(report.sup_diff) &&
                report.stability < stability_tol;
  report.extra["stability_tol"] = stability_tol;
  return report;
}

AuditReport step1_audit(int n, int K, double stability_tol) {
  if (n < 1) throw InvalidSpec("order must be >= 1");
  if (K < 8) throw RangeTooSmall("step-1 audit needs K >= 8");
  AuditReport report;
  report.label = "step1 |k b_k|";
  auto sup_over = [&](int bound) {
    double s = 0.0;
    for (int k : audit_grid(bound, /*include_zero=*/false))
      s = std::max(s, std::abs(static_cast<double>(k)) * std::abs(seq_b(n, k)));
    return s;
  };
  report.sup_norm = sup_over(K);
  report.stability = rel_change(report.sup_norm, sup_over(K / 2));
  for (int k : audit_grid(K, /*include_zero=*/false))
    report.rows.push_back(
        {k, std::abs(static_cast<double>(k)) * std::abs(seq_b(n, k)), 0.0});
  report.pass =
      std::isfinite(report.sup_norm) && report.stability < stability_tol;
  report.extra["stability_tol"] = stability_tol;
  return report;
}

AuditReport step2_audit(int n, int K, double identity_tol) {
  if (n < 1) throw InvalidSpec("order must be >= 1");
  if (K < 1) throw RangeTooSmall("step-2 audit needs K >= 1");
  AuditReport report;
  report.label = "step2 c_k vs (ik)^{2n} b_k";
  bool holds = true;
  for (int k : audit_grid(K, /*include_zero=*/false)) {
    const Complex lhs = seq_c(n, k);
    const Complex rhs = int_pow(Complex(0.0, k), 2 * n) * seq_b(n, k);
    const double gap = std::abs(lhs - rhs);
    const double disc = gap / (1.0 + std::abs(lhs) + std::abs(rhs));
    report.rows.push_back({k, gap, disc});
    report.sup_norm = std::max(report.sup_norm, gap);
    report.sup_diff = std::max(report.sup_diff, disc);
    if (disc > identity_tol) holds = false;
  }
  report.pass = holds;
  report.extra["identity_tol"] = identity_tol;
  return report;
}

StepThreeAudit step3_audit(const ProblemSpec& p, int K, double cond_limit,
                           double stability_tol, double identity_tol) {
  // Records at every audited frequency and its +1 neighbour; resonance
  // reporting mirrors build_family (smallest |k|, positive first).
  const std::set<int> needed_set = audit_support(K, /*include_zero=*/true);
  std::vector<int> needed(needed_set.begin(), needed_set.end());
  std::sort(needed.begin(), needed.end(), [](int a, int b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  });

  struct Entry {
    Mat D, N;
    double cond = 0.0;
  };
  std::vector<std::optional<Entry>> slots(needed.size());
  std::vector<int> resonant(needed.size(), 0);
  parallel_for(needed.size(), [&](std::size_t i) {
    try {
      Resolvent r = resolvent(p, needed[i], cond_limit);
      slots[i] = Entry{char_matrix(p, needed[i]), r.N, r.cond};
    } catch (const Resonance&) {
      resonant[i] = 1;
    }
  });
  for (std::size_t i = 0; i < needed.size(); ++i)
    if (resonant[i]) throw Resonance(needed[i]);

  std::map<int, Entry> entries;
  for (std::size_t i = 0; i < needed.size(); ++i)
    entries.emplace(needed[i], std::move(*slots[i]));

  auto family = [&](const std::string& label,
                    const std::function<Mat(int, const Entry&)>& fn) {
    OperatorSequence seq{label, {}};
    for (const auto& [k, e] : entries) seq.values.emplace(k, fn(k, e));
    return seq;
  };

  StepThreeAudit out;
  out.n_family = m_bound_report(
      family("N_k", [](int, const Entry& e) { return e.N; }), K,
      stability_tol);
  out.s_family = m_bound_report(
      family("S_k",
             [&](int k, const Entry& e) {
               return Mat(int_pow(Complex(0.0, k), p.order) * e.N);
             }),
      K, stability_tol);
  out.t_family = m_bound_report(
      family("T_k",
             [&](int k, const Entry& e) { return Mat(p.delay.symbol(k) * e.N); }),
      K, stability_tol);
  out.p_family = m_bound_report(
      family("P_k",
             [&](int k, const Entry& e) {
               return Mat(ik_power_sum(p.order, k) * e.N);
             }),
      K, stability_tol);

  out.identity.label = "k(N_{k+1}-N_k) = -k N_{k+1}(D_{k+1}-D_k) N_k";
  bool identity_ok = true;
  for (int k : audit_grid(K)) {
    const Entry& a = entries.at(k);
    const Entry& b = entries.at(k + 1);
    const Mat lhs = static_cast<double>(k) * (b.N - a.N);
    const Mat rhs = -static_cast<double>(k) * (b.N * (b.D - a.D) * a.N);
    const double defect = operator_norm(lhs - rhs);
    const double cond = std::max(a.cond, b.cond);
    const double allowance = identity_tol * cond * cond;
    out.identity.rows.push_back({k, defect, defect / allowance});
    out.identity.sup_norm = std::max(out.identity.sup_norm, defect);
    if (defect > allowance) identity_ok = false;
  }
  out.identity.pass = identity_ok;
  out.identity.extra["identity_tol"] = identity_tol;

  out.pass = out.n_family.pass && out.s_family.pass && out.t_family.pass &&
             out.p_family.pass && out.identity.pass;
  return out;
}

double fourier_type_ratio(const TrigPolynomial& f, double r, int grid) {
  if (!(r > 1.0 && r <= 2.0))
    throw InvalidExponent("Fourier type exponent must lie in (1, 2]");
  const double r_conj = r / (r - 1.0);
  double coeff_sum = 0.0;
  for (const auto& [k, v] : f.coeffs())
    coeff_sum += std::pow(v.norm(), r_conj);
  const double num = std::pow(coeff_sum, 1.0 / r_conj);
  const double den =
      lp_norm(f, r, grid) / std::pow(2.0 * std::numbers::pi, 1.0 / r);
  if (den == 0.0) return 0.0;
  return num / den;
}

TrigPolynomial multiplier_apply(const OperatorSequence& seq,
                                const TrigPolynomial& f) {
  TrigPolynomial u(f.dim());
  for (const auto& [k, v] : f.coeffs()) {
    auto it = seq.values.find(k);
    if (it == seq.values.end()) throw MissingFrequency(k);
    if (it->second.cols() != f.dim())
      throw DimensionMismatch("multiplier matrix does not match dimension");
    u.set_coeff(k, it->second * v);
  }
  return u;
}

}  // namespace perisolve

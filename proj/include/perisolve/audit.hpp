#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "perisolve/symbol.hpp"
#include "perisolve/trig.hpp"

namespace perisolve {

// Largest singular value.
double operator_norm(const Mat& m);

struct OperatorSequence {
  std::string label;
  std::map<int, Mat> values;
};

struct AuditRow {
  int k;
  double value;
  double discrepancy;
};

struct AuditReport {
  std::string label;
  double sup_norm = 0.0;
  double sup_diff = 0.0;
  double stability = 0.0;
  std::vector<AuditRow> rows;
  bool pass = false;
  std::map<std::string, double> extra;
};

// Frequencies a supremum over Z is evaluated on: an exact sweep of |k| <= 64
// plus a dyadic ladder up to K, K itself included, both signs. include_zero
// controls whether k = 0 participates.
std::vector<int> audit_grid(int K, bool include_zero = true);

// Builds values at every grid point and its +1 neighbour from a generator.
OperatorSequence sequence_on_grid(const std::string& label, int K,
                                  const std::function<Mat(int)>& generator,
                                  bool include_zero = true);

// sup_k ||M_k|| and sup_k ||k (M_{k+1} - M_k)|| over the audit grid, with a
// doubling-stability score (relative change of the suprema between K/2 and
// K). Passing means finite suprema and stability below the tolerance.
AuditReport m_bound_report(const OperatorSequence& seq, int K,
                           double stability_tol = 1e-3);

// |k b_k| over the nonzero audit grid.
AuditReport step1_audit(int n, int K, double stability_tol = 1e-3);

// Compares c_k against (ik)^{2n} b_k per audited k. rows[].value holds
// |lhs - rhs|, rows[].discrepancy the scale-free mismatch
// |lhs - rhs| / (1 + |lhs| + |rhs|); pass means the identity held within
// identity_tol everywhere. The report never aborts on failure.
AuditReport step2_audit(int n, int K, double identity_tol = 1e-9);

struct StepThreeAudit {
  AuditReport n_family;
  AuditReport s_family;
  AuditReport t_family;
  AuditReport p_family;
  // defect of k(N_{k+1} - N_k) = -k N_{k+1}(D_{k+1} - D_k) N_k per audited k;
  // rows[].discrepancy is defect / (tol * cond^2).
  AuditReport identity;
  bool pass = false;
};

StepThreeAudit step3_audit(const ProblemSpec& p, int K,
                           double cond_limit = kDefaultCondLimit,
                           double stability_tol = 1e-3,
                           double identity_tol = 1e-9);

// || f_hat ||_{l^{r'}} / || f ||_{L^r} with the normalized measure dt/(2 pi),
// r in (1, 2], 1/r + 1/r' = 1. Equals 1 for r = 2 by Parseval.
double fourier_type_ratio(const TrigPolynomial& f, double r, int grid);

// u_hat(k) = M_k f_hat(k) frequency-wise.
TrigPolynomial multiplier_apply(const OperatorSequence& seq,
                                const TrigPolynomial& f);

}  // namespace perisolve

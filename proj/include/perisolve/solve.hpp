#pragma once

#include <vector>

#include "perisolve/symbol.hpp"

namespace perisolve {

struct PeriodicSolution {
  TrigPolynomial u;
  int truncation;          // frequency range used
  double residual_coeff;   // coefficient-side residual at construction
  double resonance_margin; // smallest sigma_min/sigma_max of D_k encountered
};

// u_hat(k) = N_k f_hat(k) per carried frequency of f. Exact on band-limited
// forcing; frequencies absent from f stay absent from u.
PeriodicSolution solve(const ProblemSpec& p, const TrigPolynomial& f, int K,
                       double cond_limit = kDefaultCondLimit);

struct Residual {
  double coeff_defect;  // max_k ||sum_j (ik)^j u_hat - A u_hat - L_k u_hat - f_hat||
  double grid_defect;   // max_t ||sum_j u^(j)(t) - A u(t) - L(u_t) - f(t)||
};

Residual residual(const ProblemSpec& p, const TrigPolynomial& u,
                  const TrigPolynomial& f);

// min over |k| <= K of sigma_min(D_k); strictly positive means f = 0 forces
// u = 0 at this truncation.
double uniqueness_probe(const ProblemSpec& p, int K);

struct ResonanceScanRow {
  int k;
  double sigma_min;
  double rcond;  // sigma_min / sigma_max
};

// Per-frequency invertibility margins of D_k, ascending k.
std::vector<ResonanceScanRow> resonance_scan(const ProblemSpec& p, int K);

}  // namespace perisolve

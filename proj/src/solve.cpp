#include "perisolve/solve.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "perisolve/parallel.hpp"

namespace perisolve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int residual_grid(int max_frequency) {
  int grid = 16;
  while (grid <= 2 * max_frequency) grid *= 2;
  return grid;
}
}  // namespace

PeriodicSolution solve(const ProblemSpec& p, const TrigPolynomial& f, int K,
                       double cond_limit) {
  if (f.dim() != p.dim)
    throw DimensionMismatch("forcing dimension does not match problem");
  for (const auto& [k, v] : f.coeffs())
    if (std::abs(k) > K) throw TruncationTooSmall(k, K);

  TrigPolynomial u(p.dim);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : f.coeffs()) {
    const Resolvent r = resolvent(p, k, cond_limit);
    u.set_coeff(k, r.N * v);
    margin = std::min(margin, r.sigma_min / r.sigma_max);
  }
  PeriodicSolution sol{std::move(u), K, 0.0, margin};
  sol.residual_coeff = residual(p, sol.u, f).coeff_defect;
  return sol;
}

Residual residual(const ProblemSpec& p, const TrigPolynomial& u,
                  const TrigPolynomial& f) {
  if (u.dim() != p.dim || f.dim() != p.dim)
    throw DimensionMismatch("dimension mismatch in residual");

  double coeff_defect = 0.0;
  std::vector<int> freqs;
  for (const auto& [k, v] : u.coeffs()) freqs.push_back(k);
  for (const auto& [k, v] : f.coeffs())
    if (!u.coeffs().count(k)) freqs.push_back(k);
  std::sort(freqs.begin(), freqs.end());
  for (int k : freqs) {
    const Vec uk = u.coeff(k);
    const Vec defect = ik_power_sum(p.order, k) * uk - p.A * uk -
                       p.delay.symbol(k) * uk - f.coeff(k);
    coeff_defect = std::max(coeff_defect, defect.norm());
  }

  const int grid =
      residual_grid(std::max(u.max_frequency(), f.max_frequency()));
  TrigPolynomial lhs(p.dim);
  for (int j = 1; j <= p.order; ++j) lhs += derivative(u, j);
  double grid_defect = 0.0;
  for (int m = 0; m < grid; ++m) {
    const double t = kTwoPi * m / grid;
    const Vec value = synthesize(lhs, t) - p.A * synthesize(u, t) -
                      p.delay.apply(HistorySegment{u, t, p.delay.periods()}) -
                      synthesize(f, t);
    grid_defect = std::max(grid_defect, value.norm());
  }
  return {coeff_defect, grid_defect};
}

double uniqueness_probe(const ProblemSpec& p, int K) {
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const ResonanceScanRow& row : resonance_scan(p, K))
    min_sigma = std::min(min_sigma, row.sigma_min);
  return min_sigma;
}

std::vector<ResonanceScanRow> resonance_scan(const ProblemSpec& p, int K) {
  if (K < 0) throw InvalidSpec("scan range must be nonnegative");
  std::vector<ResonanceScanRow> rows(2 * K + 1);
  parallel_for(rows.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i) - K;
    Eigen::JacobiSVD<Mat> svd(char_matrix(p, k));
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    rows[i] = {k, smin, smax > 0.0 ? smin / smax : 0.0};
  });
  return rows;
}

}  // namespace perisolve

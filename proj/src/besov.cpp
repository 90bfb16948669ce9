#include "perisolve/besov.hpp"

#include <algorithm>
#include <cmath>

namespace perisolve {

double DyadicPartition::phi(int j, double t) const {
  const double a = std::abs(t);
  if (j == 0) {
    if (a <= 1.0) return 1.0;
    if (a <= 2.0) return 1.0 - std::log2(a);
    return 0.0;
  }
  if (a == 0.0) return 0.0;
  return std::max(0.0, 1.0 - std::abs(std::log2(a) - j));
}

DyadicPartition build_partition(int jmax) {
  if (jmax < 0) throw InvalidSpec("jmax must be nonnegative");
  return DyadicPartition{jmax};
}

namespace {

void check_params(const BesovParams& params) {
  if (params.p < 1.0 || !std::isfinite(params.p) || params.q < 1.0 ||
      !std::isfinite(params.q))
    throw InvalidExponent("besov exponents must lie in [1, inf)");
}

}  // namespace

std::vector<BesovBlockRow> besov_blocks(const TrigPolynomial& f,
                                        const BesovParams& params,
                                        const DyadicPartition& part,
                                        int grid) {
  check_params(params);
  const int top = f.max_frequency();
  if (static_cast<double>(top) > std::exp2(part.jmax))
    throw PartitionTooShort(part.jmax, top);
  std::vector<BesovBlockRow> rows;
  rows.reserve(part.jmax + 1);
  for (int j = 0; j <= part.jmax; ++j) {
    TrigPolynomial block(f.dim());
    bool active = false;
    for (const auto& [k, v] : f.coeffs()) {
      const double w = part.phi(j, static_cast<double>(k));
      if (w != 0.0) {
        block.set_coeff(k, w * v);
        active = true;
      }
    }
    const double norm = active ? lp_norm(block, params.p, grid) : 0.0;
    rows.push_back({j, std::exp2(params.s * j), norm});
  }
  return rows;
}

double besov_norm(const TrigPolynomial& f, const BesovParams& params,
                  const DyadicPartition& part, int grid) {
  double acc = 0.0;
  for (const BesovBlockRow& row : besov_blocks(f, params, part, grid))
    acc += std::pow(row.weight * row.block_norm, params.q);
  return std::pow(acc, 1.0 / params.q);
}

double lifting_ratio(const TrigPolynomial& f, const BesovParams& params,
                     const DyadicPartition& part, int grid) {
  if (f.is_zero()) throw ZeroInput("lifting ratio needs a nonzero input");
  const double num = besov_norm(derivative(f, 1), params, part, grid);
  BesovParams lifted = params;
  lifted.s = params.s + 1.0;
  const double den = besov_norm(f, lifted, part, grid);
  if (den == 0.0) throw ZeroInput("lifted norm vanished");
  return num / den;
}

}  // namespace perisolve

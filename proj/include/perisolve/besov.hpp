#pragma once

#include <vector>

#include "perisolve/trig.hpp"

namespace perisolve {

// Dyadic resolution of unity made of hats in log2|t|:
//   phi_0 = 1 on |t| <= 1, 1 - log2|t| on 1 < |t| <= 2, else 0;
//   phi_j(t) = max(0, 1 - |log2|t| - j|) for j >= 1.
// supp phi_j lies in 2^{j-1} <= |t| <= 2^{j+1} and the family sums to 1 on
// |t| <= 2^{jmax}.
struct DyadicPartition {
  int jmax;

  double phi(int j, double t) const;
};

DyadicPartition build_partition(int jmax);

struct BesovParams {
  double s;
  double p;  // in [1, inf)
  double q;  // in [1, inf)
};

struct BesovBlockRow {
  int j;
  double weight;      // 2^{s j}
  double block_norm;  // L^p norm of the j-th frequency block
};

// Per-block breakdown of the Besov norm; ascending j.
std::vector<BesovBlockRow> besov_blocks(const TrigPolynomial& f,
                                        const BesovParams& params,
                                        const DyadicPartition& part, int grid);

// l^q combination over j of 2^{s j} L^p norms of the dyadic blocks
// e_k phi_j(k) f_hat(k).
double besov_norm(const TrigPolynomial& f, const BesovParams& params,
                  const DyadicPartition& part, int grid);

// besov_norm(f', s) / besov_norm(f, s+1), the finite shadow of the lifting
// equivalence. Lies in [1/2, 2] on monomials.
double lifting_ratio(const TrigPolynomial& f, const BesovParams& params,
                     const DyadicPartition& part, int grid);

}  // namespace perisolve

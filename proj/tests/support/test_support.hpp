#pragma once

#include <random>

#include "perisolve/solve.hpp"
#include "perisolve/symbol.hpp"
#include "perisolve/trig.hpp"

namespace perisolve::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec random_vec(Rng& rng, int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  return v;
}

inline Mat random_mat(Rng& rng, int dim, bool real_only = false) {
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = Complex(uniform(rng, -1.0, 1.0),
                        real_only ? 0.0 : uniform(rng, -1.0, 1.0));
  return m;
}

// Dense band-limited polynomial with entries in the unit box.
inline TrigPolynomial random_poly(Rng& rng, int dim, int kmax) {
  TrigPolynomial f(dim);
  for (int k = -kmax; k <= kmax; ++k) f.set_coeff(k, random_vec(rng, dim));
  return f;
}

// Real-valued carrier: conjugate-symmetric coefficients.
inline TrigPolynomial random_real_poly(Rng& rng, int dim, int kmax) {
  TrigPolynomial f(dim);
  Vec mid(dim);
  for (int i = 0; i < dim; ++i) mid(i) = Complex(uniform(rng, -1.0, 1.0), 0.0);
  f.set_coeff(0, mid);
  for (int k = 1; k <= kmax; ++k) {
    const Vec v = random_vec(rng, dim);
    f.set_coeff(k, v);
    f.set_coeff(-k, v.conjugate());
  }
  return f;
}

// Kernel-free problem with the spectrum of A pushed left so that the
// characteristic family stays uniformly invertible; rejects rare resonant
// draws by probing the margins.
inline ProblemSpec random_nonresonant_problem(Rng& rng, int max_order = 4,
                                              int max_dim = 4,
                                              int probe_range = 32,
                                              bool real_only = false) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int n = std::uniform_int_distribution<int>(1, max_order)(rng);
    const int d = std::uniform_int_distribution<int>(1, max_dim)(rng);
    Mat A = 0.5 * random_mat(rng, d, real_only);
    A -= (2.0 + uniform(rng, 0.0, 2.0)) * Mat::Identity(d, d);
    DelaySpec delay(d, 1);
    const int terms = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int t = 0; t < terms; ++t)
      delay.add_discrete(uniform(rng, 0.0, delay.horizon()),
                         (0.3 / d) * random_mat(rng, d, /*real_only=*/true));
    ProblemSpec p(n, d, A, delay);
    bool ok = true;
    for (const ResonanceScanRow& row : resonance_scan(p, probe_range)) {
      if (row.sigma_min < 1e-3 || row.rcond < 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  throw std::runtime_error("could not draw a non-resonant problem");
}

}  // namespace perisolve::testing

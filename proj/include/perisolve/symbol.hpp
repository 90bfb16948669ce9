#pragma once

#include <map>

#include "perisolve/delay.hpp"
#include "perisolve/trig.hpp"

namespace perisolve {

inline constexpr double kDefaultCondLimit = 1e12;

// The left side of sum_{j=1}^n x^(j) = A x + L x_t + f: order, state
// dimension, the matrix A and the delay functional.
struct ProblemSpec {
  int order;  // n >= 1
  int dim;    // d >= 1
  Mat A;
  DelaySpec delay;

  ProblemSpec(int order, int dim, Mat A, DelaySpec delay);
};

// sum_{j=1}^{n} (ik)^j.
Complex ik_power_sum(int n, int k);

// Characteristic matrix D_k = sum_{j=1}^n (ik)^j I - A - L_k.
Mat char_matrix(const ProblemSpec& p, int k);

struct Resolvent {
  Mat N;  // D_k^{-1}
  double cond;
  double sigma_min;
  double sigma_max;
};

// Inverts D_k; refuses singular or ill-conditioned matrices.
Resolvent resolvent(const ProblemSpec& p, int k,
                    double cond_limit = kDefaultCondLimit);

struct SymbolRecord {
  Mat D;       // characteristic matrix
  Mat N;       // D^{-1}
  Mat S;       // (ik)^n N
  Mat T;       // L_k N
  Mat P;       // sum_j (ik)^j N
  double cond;
};

struct SymbolFamily {
  int range;  // covers |k| <= range
  std::map<int, SymbolRecord> records;
};

// All records for |k| <= K. On resonance throws for the offending frequency
// with the smallest |k|, ties broken toward positive k.
SymbolFamily build_family(const ProblemSpec& p, int K,
                          double cond_limit = kDefaultCondLimit);

// n!/(p!(n-p)!) in double precision.
double binomial(int n, int p);

// The three scalar proof sequences, evaluated term by term as displayed.
// Empty sums are zero. a_k and b_k need k != 0.
Complex seq_a(int n, int k);
Complex seq_b(int n, int k);
Complex seq_c(int n, int k);

}  // namespace perisolve

#pragma once

#include <optional>
#include <vector>

#include "perisolve/trig.hpp"

namespace perisolve {

class TrigPolynomial;

// History window theta -> x(t + theta) on [-2 pi N, 0], evaluated through
// the periodic carrier. Transient view; does not own the polynomial.
struct HistorySegment {
  const TrigPolynomial& base;
  double time;
  int periods;

  Vec operator()(double theta) const;
};

// Bounded delay functional: finitely many discrete lags plus an optional
// matrix kernel sampled on a uniform grid over [-2 pi N, 0].
class DelaySpec {
 public:
  struct Term {
    double lag;  // evaluation at theta = -lag, lag in [0, 2 pi N]
    Mat B;
  };
  struct Kernel {
    int grid_count;           // number of uniform nodes, >= 2
    std::vector<Mat> values;  // K(theta_q), theta_q = -2 pi N + q * step
  };

  DelaySpec(int dim, int periods);

  int dim() const { return dim_; }
  int periods() const { return periods_; }
  // r_{2 pi} = 2 pi N.
  double horizon() const;

  void add_discrete(double lag, const Mat& B);
  void set_kernel(std::vector<Mat> values);

  const std::vector<Term>& discrete_terms() const { return discrete_; }
  const std::optional<Kernel>& kernel() const { return kernel_; }
  bool is_zero() const;

  // sum_m B_m x(t - r_m) + trapezoid of integral K(theta) x(t + theta).
  Vec apply(const HistorySegment& seg) const;

  // L_k = sum_m e^{-ik r_m} B_m + trapezoid of integral e^{ik theta} K(theta).
  Mat symbol(int k) const;

  // Richardson estimate of the kernel quadrature error in symbol(k), with a
  // roundoff floor. Zero-kernel specs report 0.
  double kernel_quadrature_estimate(int k) const;

 private:
  Mat kernel_trapezoid(int k, bool coarse) const;

  int dim_;
  int periods_;
  std::vector<Term> discrete_;
  std::optional<Kernel> kernel_;
};

struct TransferCheck {
  double defect;            // max_k || analyzed coefficient - L_k u_hat(k) ||
  double quadrature_bound;  // kernel quadrature estimate + roundoff floor
};

// Samples t -> L(u_t), analyzes it, and compares against the symbol route.
TransferCheck verify_transfer(const DelaySpec& L, const TrigPolynomial& u,
                              int kmax, int grid);

}  // namespace perisolve

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "perisolve/errors.hpp"

namespace perisolve {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// z^e for integer e, with negative exponents as reciprocals.
Complex int_pow(Complex z, int e);

// A 2pi-periodic vector-valued function carried by finitely many Fourier
// coefficients. Absent frequencies mean zero; all coefficient vectors have
// length dim(). Closed under addition, scaling and frequency-wise maps.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(int dim);

  static TrigPolynomial constant(const Vec& x);
  // e_k * x, the monomial with a single coefficient at frequency k.
  static TrigPolynomial monomial(int k, const Vec& x);

  int dim() const { return dim_; }
  const std::map<int, Vec>& coeffs() const { return coeffs_; }

  // Zero vector when the frequency is absent.
  Vec coeff(int k) const;
  void set_coeff(int k, const Vec& v);

  bool is_zero() const;
  // Largest |k| carrying a coefficient; 0 for the zero polynomial.
  int max_frequency() const;

  Vec operator()(double t) const;

  TrigPolynomial& operator+=(const TrigPolynomial& rhs);
  TrigPolynomial& operator-=(const TrigPolynomial& rhs);
  TrigPolynomial& operator*=(Complex a);

  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) {
    a += b;
    return a;
  }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) {
    a -= b;
    return a;
  }
  friend TrigPolynomial operator*(Complex a, TrigPolynomial f) {
    f *= a;
    return f;
  }

 private:
  int dim_;
  std::map<int, Vec> coeffs_;
};

// Samples at the uniform nodes t_m = 2 pi m / M, m = 0..M-1.
struct SampledFunction {
  int dim;
  std::vector<Vec> samples;

  int grid_size() const { return static_cast<int>(samples.size()); }
};

SampledFunction sample(const TrigPolynomial& f, int grid);

// Discrete Fourier analysis (1/M)*sum_m g(t_m) e^{-ik t_m} for |k| <= kmax.
// Exact on trig polynomials of degree <= kmax when M > 2*kmax.
TrigPolynomial analyze(const SampledFunction& g, int kmax);

// sum_k e^{ikt} f_hat(k).
Vec synthesize(const TrigPolynomial& f, double t);

// Coefficient-wise (ik)^j; wipes the k = 0 coefficient.
TrigPolynomial derivative(const TrigPolynomial& f, int j);

// Quadrature of (integral_0^{2pi} ||f(t)||^p dt)^{1/p} on the uniform grid;
// exact for p = 2 under the Nyquist margin. Euclidean vector norm.
double lp_norm(const TrigPolynomial& f, double p, int grid);

// | sum_k ||f_hat(k)||^2 - lp_norm(f,2)^2 / (2 pi) |.
double parseval_defect(const TrigPolynomial& f, int grid);

// max_k || a_hat(k) - b_hat(k) || over the union of carried frequencies.
double coeff_distance(const TrigPolynomial& a, const TrigPolynomial& b);

// max_k || f_hat(-k) - conj(f_hat(k)) ||; zero iff f is real-valued.
double realness_defect(const TrigPolynomial& f);

}  // namespace perisolve

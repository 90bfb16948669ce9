#include "perisolve/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace perisolve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Complex int_pow(Complex z, int e) {
  if (e < 0) return Complex(1.0, 0.0) / int_pow(z, -e);
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= z;
  return acc;
}

TrigPolynomial::TrigPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidSpec("state dimension must be positive");
}

TrigPolynomial TrigPolynomial::constant(const Vec& x) {
  return monomial(0, x);
}

TrigPolynomial TrigPolynomial::monomial(int k, const Vec& x) {
  TrigPolynomial f(static_cast<int>(x.size()));
  f.set_coeff(k, x);
  return f;
}

Vec TrigPolynomial::coeff(int k) const {
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) return Vec::Zero(dim_);
  return it->second;
}

void TrigPolynomial::set_coeff(int k, const Vec& v) {
  if (v.size() != dim_)
    throw DimensionMismatch("coefficient vector length " +
                            std::to_string(v.size()) + " does not match dim " +
                            std::to_string(dim_));
  coeffs_[k] = v;
}

bool TrigPolynomial::is_zero() const {
  for (const auto& [k, v] : coeffs_)
    if (v.norm() > 0.0) return false;
  return true;
}

int TrigPolynomial::max_frequency() const {
  int m = 0;
  for (const auto& [k, v] : coeffs_) m = std::max(m, std::abs(k));
  return m;
}

Vec TrigPolynomial::operator()(double t) const { return synthesize(*this, t); }

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& rhs) {
  if (rhs.dim_ != dim_) throw DimensionMismatch("polynomial dims differ");
  for (const auto& [k, v] : rhs.coeffs_) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end())
      coeffs_[k] = v;
    else
      it->second += v;
  }
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& rhs) {
  if (rhs.dim_ != dim_) throw DimensionMismatch("polynomial dims differ");
  for (const auto& [k, v] : rhs.coeffs_) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end())
      coeffs_[k] = -v;
    else
      it->second -= v;
  }
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(Complex a) {
  for (auto& [k, v] : coeffs_) v *= a;
  return *this;
}

SampledFunction sample(const TrigPolynomial& f, int grid) {
  if (grid < 1) throw InvalidSpec("grid size must be positive");
  SampledFunction g{f.dim(), {}};
  g.samples.reserve(grid);
  for (int m = 0; m < grid; ++m)
    g.samples.push_back(synthesize(f, kTwoPi * m / grid));
  return g;
}

TrigPolynomial analyze(const SampledFunction& g, int kmax) {
  const int M = g.grid_size();
  if (kmax < 0) throw InvalidSpec("kmax must be nonnegative");
  if (M <= 2 * kmax) throw NyquistViolation(M, kmax);
  TrigPolynomial f(g.dim);
  for (int k = -kmax; k <= kmax; ++k) {
    Vec acc = Vec::Zero(g.dim);
    for (int m = 0; m < M; ++m) {
      const double angle = -kTwoPi * k * m / M;
      acc += g.samples[m] * Complex(std::cos(angle), std::sin(angle));
    }
    f.set_coeff(k, acc / static_cast<double>(M));
  }
  return f;
}

Vec synthesize(const TrigPolynomial& f, double t) {
  Vec acc = Vec::Zero(f.dim());
  for (const auto& [k, v] : f.coeffs()) {
    const double angle = k * t;
    acc += v * Complex(std::cos(angle), std::sin(angle));
  }
  return acc;
}

TrigPolynomial derivative(const TrigPolynomial& f, int j) {
  if (j < 1) throw InvalidSpec("derivative order must be >= 1");
  TrigPolynomial g(f.dim());
  for (const auto& [k, v] : f.coeffs()) {
    if (k == 0) continue;
    g.set_coeff(k, int_pow(Complex(0.0, k), j) * v);
  }
  return g;
}

double lp_norm(const TrigPolynomial& f, double p, int grid) {
  if (p < 1.0 || !std::isfinite(p))
    throw InvalidExponent("p must lie in [1, inf)");
  if (grid <= 2 * f.max_frequency())
    throw NyquistViolation(grid, f.max_frequency());
  const double h = kTwoPi / grid;
  double acc = 0.0;
  for (int m = 0; m < grid; ++m)
    acc += std::pow(synthesize(f, kTwoPi * m / grid).norm(), p) * h;
  return std::pow(acc, 1.0 / p);
}

double parseval_defect(const TrigPolynomial& f, int grid) {
  double sum_sq = 0.0;
  for (const auto& [k, v] : f.coeffs()) sum_sq += v.squaredNorm();
  const double n2 = lp_norm(f, 2.0, grid);
  return std::abs(sum_sq - n2 * n2 / kTwoPi);
}

double coeff_distance(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("polynomial dims differ");
  double worst = 0.0;
  for (const auto& [k, v] : a.coeffs())
    worst = std::max(worst, (v - b.coeff(k)).norm());
  for (const auto& [k, v] : b.coeffs())
    worst = std::max(worst, (v - a.coeff(k)).norm());
  return worst;
}

double realness_defect(const TrigPolynomial& f) {
  double worst = 0.0;
  for (const auto& [k, v] : f.coeffs())
    worst = std::max(worst, (f.coeff(-k).conjugate() - v).norm());
  return worst;
}

}  // namespace perisolve

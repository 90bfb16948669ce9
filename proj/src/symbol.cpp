#include "perisolve/symbol.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <optional>
#include <vector>

#include "perisolve/parallel.hpp"

namespace perisolve {

ProblemSpec::ProblemSpec(int order, int dim, Mat A_, DelaySpec delay_)
    : order(order), dim(dim), A(std::move(A_)), delay(std::move(delay_)) {
  if (order < 1) throw InvalidSpec("differential order must be >= 1");
  if (dim < 1) throw InvalidSpec("state dimension must be >= 1");
  if (A.rows() != dim || A.cols() != dim)
    throw DimensionMismatch("A must be d x d");
  if (delay.dim() != dim)
    throw DimensionMismatch("delay spec dimension does not match problem");
}

Complex ik_power_sum(int n, int k) {
  const Complex ik(0.0, k);
  Complex acc(0.0, 0.0);
  Complex power(1.0, 0.0);
  for (int j = 1; j <= n; ++j) {
    power *= ik;
    acc += power;
  }
  return acc;
}

Mat char_matrix(const ProblemSpec& p, int k) {
  Mat d = ik_power_sum(p.order, k) * Mat::Identity(p.dim, p.dim);
  d -= p.A;
  d -= p.delay.symbol(k);
  return d;
}

namespace {

struct SigmaPair {
  double min;
  double max;
};

SigmaPair singular_range(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace

Resolvent resolvent(const ProblemSpec& p, int k, double cond_limit) {
  const Mat d = char_matrix(p, k);
  const auto [smin, smax] = singular_range(d);
  if (smax == 0.0 || smin <= smax * 1e-15)
    throw Resonance(k, "characteristic matrix singular");
  const double cond = smax / smin;
  if (cond > cond_limit)
    throw Resonance(k, "condition number " + std::to_string(cond) +
                           " exceeds limit");
  Eigen::PartialPivLU<Mat> lu(d);
  return {lu.solve(Mat::Identity(p.dim, p.dim)), cond, smin, smax};
}

SymbolFamily build_family(const ProblemSpec& p, int K, double cond_limit) {
  if (K < 0) throw InvalidSpec("family range must be nonnegative");
  // Resonance reporting is deterministic: smallest |k| first, positive k
  // before negative at equal magnitude.
  std::vector<int> order;
  order.push_back(0);
  for (int m = 1; m <= K; ++m) {
    order.push_back(m);
    order.push_back(-m);
  }
  std::vector<std::optional<SymbolRecord>> slots(order.size());
  std::vector<int> resonant(order.size(), 0);
  parallel_for(order.size(), [&](std::size_t i) {
    const int k = order[i];
    try {
      Resolvent r = resolvent(p, k, cond_limit);
      SymbolRecord rec;
      rec.D = char_matrix(p, k);
      rec.N = r.N;
      rec.S = int_pow(Complex(0.0, k), p.order) * r.N;
      rec.T = p.delay.symbol(k) * r.N;
      rec.P = ik_power_sum(p.order, k) * r.N;
      rec.cond = r.cond;
      slots[i] = std::move(rec);
    } catch (const Resonance&) {
      resonant[i] = 1;
    }
  });
  for (std::size_t i = 0; i < order.size(); ++i)
    if (resonant[i]) throw Resonance(order[i]);
  SymbolFamily fam;
  fam.range = K;
  for (std::size_t i = 0; i < order.size(); ++i)
    fam.records.emplace(order[i], std::move(*slots[i]));
  return fam;
}

double binomial(int n, int p) {
  if (p < 0 || p > n) return 0.0;
  p = std::min(p, n - p);
  double acc = 1.0;
  for (int i = 1; i <= p; ++i) acc = acc * (n - p + i) / i;
  return std::round(acc);
}

Complex seq_a(int n, int k) {
  if (n < 1) throw InvalidSpec("order must be >= 1");
  if (k == 0) throw ZeroFrequency("a_k needs k != 0");
  const Complex ik(0.0, k);
  const Complex i(0.0, 1.0);
  Complex acc(n, 0.0);
  for (int j = 1; j <= n - 1; ++j)
    for (int p = 1; p <= j; ++p)
      acc += binomial(j, p) * int_pow(ik, j + 1 - n - p) * int_pow(i, p - 1);
  for (int p = 2; p <= n; ++p)
    acc += binomial(n, p) * int_pow(ik, 1 - p) * int_pow(i, p - 1);
  return acc;
}

Complex seq_b(int n, int k) {
  if (n < 1) throw InvalidSpec("order must be >= 1");
  if (k == 0) throw ZeroFrequency("b_k needs k != 0");
  const Complex ik(0.0, k);
  const Complex i(0.0, 1.0);
  Complex first(0.0, 0.0);
  for (int p = 1; p <= n; ++p)
    first += binomial(n, p) * int_pow(ik, -p) * int_pow(i, p);
  Complex tail(0.0, 0.0);
  for (int j = 1; j <= n - 1; ++j) tail += int_pow(ik, j - n);
  Complex cross(0.0, 0.0);
  for (int j = 1; j <= n - 1; ++j)
    for (int p = 0; p <= j; ++p)
      cross += binomial(j, p) * int_pow(ik, j - p - n) * int_pow(i, p);
  return 2.0 * first + tail + cross + first * tail;
}

Complex seq_c(int n, int k) {
  if (n < 1) throw InvalidSpec("order must be >= 1");
  const Complex ik(0.0, k);
  const Complex i(0.0, 1.0);
  Complex lead(0.0, 0.0);
  for (int p = 0; p <= n; ++p)
    lead += binomial(n, p) * int_pow(ik, n - p) * int_pow(i, p);
  Complex inner(0.0, 0.0);
  for (int j = 1; j <= n; ++j)
    for (int p = 0; p <= j; ++p)
      inner += binomial(j, p) * int_pow(ik, j - p) * int_pow(i, p);
  return lead * ik_power_sum(n, k) - int_pow(ik, n) * inner;
}

}  // namespace perisolve

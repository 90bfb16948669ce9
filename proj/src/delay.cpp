#include "perisolve/delay.hpp"

#include <cmath>
#include <numbers>

namespace perisolve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double angle) {
  return {std::cos(angle), std::sin(angle)};
}
}  // namespace

Vec HistorySegment::operator()(double theta) const {
  return synthesize(base, time + theta);
}

DelaySpec::DelaySpec(int dim, int periods) : dim_(dim), periods_(periods) {
  if (dim < 1) throw InvalidSpec("delay dimension must be positive");
  if (periods < 1) throw InvalidSpec("periods must be positive");
}

double DelaySpec::horizon() const { return kTwoPi * periods_; }

void DelaySpec::add_discrete(double lag, const Mat& B) {
  if (lag < 0.0 || lag > horizon())
    throw InvalidSpec("lag must lie in [0, 2 pi N]");
  if (B.rows() != dim_ || B.cols() != dim_)
    throw DimensionMismatch("delay matrix must be d x d");
  discrete_.push_back({lag, B});
}

void DelaySpec::set_kernel(std::vector<Mat> values) {
  if (values.size() < 2)
    throw InvalidSpec("kernel needs at least two grid nodes");
  for (const Mat& m : values)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw DimensionMismatch("kernel matrices must be d x d");
  kernel_ = Kernel{static_cast<int>(values.size()), std::move(values)};
}

bool DelaySpec::is_zero() const {
  return discrete_.empty() && !kernel_.has_value();
}

Vec DelaySpec::apply(const HistorySegment& seg) const {
  if (seg.base.dim() != dim_)
    throw DimensionMismatch("segment dimension does not match delay spec");
  Vec acc = Vec::Zero(dim_);
  for (const Term& term : discrete_) acc += term.B * seg(-term.lag);
  if (kernel_) {
    const int Q = kernel_->grid_count;
    const double step = horizon() / (Q - 1);
    for (int q = 0; q < Q; ++q) {
      const double theta = -horizon() + q * step;
      const double w = (q == 0 || q == Q - 1) ? step / 2.0 : step;
      acc += w * (kernel_->values[q] * seg(theta));
    }
  }
  return acc;
}

Mat DelaySpec::kernel_trapezoid(int k, bool coarse) const {
  const int Q = kernel_->grid_count;
  const double step = horizon() / (Q - 1);
  // Coarse pass keeps every other node plus the right endpoint; trapezoid
  // weights follow the (possibly nonuniform) node spacing.
  std::vector<int> nodes;
  if (coarse) {
    for (int q = 0; q < Q; q += 2) nodes.push_back(q);
    if (nodes.back() != Q - 1) nodes.push_back(Q - 1);
  } else {
    for (int q = 0; q < Q; ++q) nodes.push_back(q);
  }
  Mat acc = Mat::Zero(dim_, dim_);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double ta = -horizon() + nodes[i] * step;
    const double tb = -horizon() + nodes[i + 1] * step;
    const Mat fa = unit_phase(k * ta) * kernel_->values[nodes[i]];
    const Mat fb = unit_phase(k * tb) * kernel_->values[nodes[i + 1]];
    acc += (tb - ta) / 2.0 * (fa + fb);
  }
  return acc;
}

Mat DelaySpec::symbol(int k) const {
  Mat acc = Mat::Zero(dim_, dim_);
  for (const Term& term : discrete_)
    acc += unit_phase(-k * term.lag) * term.B;
  if (kernel_) acc += kernel_trapezoid(k, /*coarse=*/false);
  return acc;
}

double DelaySpec::kernel_quadrature_estimate(int k) const {
  if (!kernel_) return 0.0;
  const Mat fine = kernel_trapezoid(k, /*coarse=*/false);
  const Mat half = kernel_trapezoid(k, /*coarse=*/true);
  double scale = 0.0;
  for (const Mat& m : kernel_->values) scale = std::max(scale, m.norm());
  // Richardson gap plus a roundoff floor for the summation itself.
  return (fine - half).norm() / 3.0 +
         1e-14 * horizon() * scale * kernel_->grid_count;
}

TransferCheck verify_transfer(const DelaySpec& L, const TrigPolynomial& u,
                              int kmax, int grid) {
  if (u.dim() != L.dim())
    throw DimensionMismatch("carrier dimension does not match delay spec");
  if (grid <= 2 * kmax) throw NyquistViolation(grid, kmax);
  if (grid <= 2 * u.max_frequency())
    throw NyquistViolation(grid, u.max_frequency());

  SampledFunction g{L.dim(), {}};
  g.samples.reserve(grid);
  for (int m = 0; m < grid; ++m) {
    const double t = kTwoPi * m / grid;
    g.samples.push_back(L.apply(HistorySegment{u, t, L.periods()}));
  }
  const TrigPolynomial transferred = analyze(g, kmax);

  double defect = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const Vec lhs = transferred.coeff(k);
    const Vec rhs = L.symbol(k) * u.coeff(k);
    defect = std::max(defect, (lhs - rhs).norm());
  }

  double magnitude = 0.0;
  double bound = 0.0;
  for (const auto& [k, v] : u.coeffs()) {
    bound += L.kernel_quadrature_estimate(k) * v.norm();
    magnitude += v.norm();
  }
  double delay_scale = 0.0;
  for (const auto& term : L.discrete_terms())
    delay_scale += term.B.norm();
  if (L.kernel())
    for (const Mat& m : L.kernel()->values)
      delay_scale = std::max(delay_scale, m.norm() * L.horizon());
  bound += 1e-12 * (1.0 + magnitude) * (1.0 + delay_scale);
  return {defect, bound};
}

}  // namespace perisolve

#include "perisolve/fd.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "perisolve/parallel.hpp"

namespace perisolve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Coefficients G[sigma] of the collocation operator
// (S x)_m = sum_sigma G[sigma] x_{(m+sigma) mod M}.
struct Generator {
  int grid;
  int dim;
  std::vector<Mat> blocks;
};

// Linear interpolation of the delay kernel at theta in [-2 pi N, 0].
Mat kernel_at(const DelaySpec::Kernel& kernel, double horizon, double theta) {
  const int Q = kernel.grid_count;
  const double step = horizon / (Q - 1);
  double pos = (theta + horizon) / step;
  pos = std::clamp(pos, 0.0, static_cast<double>(Q - 1));
  const int lo = std::min(static_cast<int>(std::floor(pos)), Q - 2);
  const double w = pos - lo;
  return (1.0 - w) * kernel.values[lo] + w * kernel.values[lo + 1];
}

Generator build_generator(const ProblemSpec& p, int M) {
  const double h = kTwoPi / M;
  Generator gen{M, p.dim, std::vector<Mat>(M, Mat::Zero(p.dim, p.dim))};

  // Scalar stencil of sum_{j=1}^n C^j with C the central first difference.
  std::vector<double> total(M, 0.0);
  std::vector<double> current(M, 0.0);
  current[0] = 1.0;
  for (int j = 1; j <= p.order; ++j) {
    std::vector<double> next(M, 0.0);
    for (int s = 0; s < M; ++s) {
      if (current[s] == 0.0) continue;
      next[(s + 1) % M] += current[s] / (2.0 * h);
      next[(s + M - 1) % M] -= current[s] / (2.0 * h);
    }
    current = std::move(next);
    for (int s = 0; s < M; ++s) total[s] += current[s];
  }
  const Mat eye = Mat::Identity(p.dim, p.dim);
  for (int s = 0; s < M; ++s)
    if (total[s] != 0.0) gen.blocks[s] += total[s] * eye;

  gen.blocks[0] -= p.A;

  for (const auto& term : p.delay.discrete_terms()) {
    const double shift = term.lag / h;
    const double lo = std::floor(shift);
    const double w = shift - lo;
    auto add = [&](double steps, double weight) {
      if (weight == 0.0) return;
      const long long o = -static_cast<long long>(steps);
      const int sigma = static_cast<int>(((o % M) + M) % M);
      gen.blocks[sigma] -= weight * term.B;
    };
    if (w < 1e-9) {
      add(lo, 1.0);
    } else if (w > 1.0 - 1e-9) {
      add(lo + 1.0, 1.0);
    } else {
      add(lo, 1.0 - w);
      add(lo + 1.0, w);
    }
  }

  if (p.delay.kernel()) {
    const auto& kernel = *p.delay.kernel();
    const double horizon = p.delay.horizon();
    const int nodes = M * p.delay.periods();  // intervals of width h
    for (int q = 0; q <= nodes; ++q) {
      const double theta = -horizon + q * h;
      const double w = (q == 0 || q == nodes) ? h / 2.0 : h;
      const long long o = q - nodes;
      const int sigma = static_cast<int>(((o % M) + M) % M);
      gen.blocks[sigma] -= w * kernel_at(kernel, horizon, theta);
    }
  }
  return gen;
}

std::vector<Mat> mode_symbols(const Generator& gen) {
  const int M = gen.grid;
  const double h = kTwoPi / M;
  std::vector<Mat> symbols(M);
  parallel_for(M, [&](std::size_t kappa) {
    Mat acc = Mat::Zero(gen.dim, gen.dim);
    // One rotation per step instead of a sincos per term.
    const double angle = kappa * h;
    const Complex step(std::cos(angle), std::sin(angle));
    Complex phase(1.0, 0.0);
    for (int s = 0; s < M; ++s) {
      acc.noalias() += phase * gen.blocks[s];
      phase *= step;
    }
    symbols[kappa] = std::move(acc);
  });
  return symbols;
}

int signed_frequency(int kappa, int M) {
  return kappa <= M / 2 ? kappa : kappa - M;
}

Vec generator_matvec(const Generator& gen, const Vec& x, int m) {
  const int d = gen.dim;
  Vec acc = Vec::Zero(d);
  int col = m;
  for (int s = 0; s < gen.grid; ++s) {
    acc.noalias() += gen.blocks[s] * x.segment(col * d, d);
    if (++col == gen.grid) col = 0;
  }
  return acc;
}

}  // namespace

Mat fd_system_matrix(const ProblemSpec& p, int grid) {
  if (grid < 8 || grid % 2 != 0)
    throw InvalidSpec("oracle grid must be even and >= 8");
  if (static_cast<long long>(grid) * p.dim > 8192)
    throw InvalidSpec("oracle system too large");
  const Generator gen = build_generator(p, grid);
  const int d = p.dim;
  Mat S = Mat::Zero(grid * d, grid * d);
  parallel_for(grid, [&](std::size_t m) {
    for (int s = 0; s < grid; ++s) {
      const int col = static_cast<int>((m + s) % gen.grid);
      S.block(static_cast<int>(m) * d, col * d, d, d) = gen.blocks[s];
    }
  });
  return S;
}

std::vector<Mat> fd_mode_symbols(const ProblemSpec& p, int grid) {
  if (grid < 8 || grid % 2 != 0)
    throw InvalidSpec("oracle grid must be even and >= 8");
  return mode_symbols(build_generator(p, grid));
}

FdSolution solve_fd(const ProblemSpec& p, const TrigPolynomial& f, int grid) {
  if (grid < 8 || grid % 2 != 0)
    throw InvalidSpec("oracle grid must be even and >= 8");
  if (static_cast<long long>(grid) * p.dim > 8192)
    throw InvalidSpec("oracle system too large");
  if (f.dim() != p.dim)
    throw DimensionMismatch("forcing dimension does not match problem");
  if (grid <= 2 * f.max_frequency())
    throw NyquistViolation(grid, f.max_frequency());

  const Generator gen = build_generator(p, grid);

  // Block-circulant structure: singular values of the system are the union
  // of the mode-symbol singular values, so resonance detection is exact.
  const std::vector<Mat> symbols = mode_symbols(gen);
  std::vector<double> smin(grid), smax(grid);
  parallel_for(grid, [&](std::size_t kappa) {
    Eigen::JacobiSVD<Mat> svd(symbols[kappa]);
    const auto& sv = svd.singularValues();
    smin[kappa] = sv(sv.size() - 1);
    smax[kappa] = sv(0);
  });
  const double scale = *std::max_element(smax.begin(), smax.end());
  const double tol = 1e-10 * std::max(1.0, scale);
  // Smallest |signed frequency| first, positive before negative.
  for (int a = 0; a <= grid / 2; ++a) {
    for (int kappa : {a, grid - a}) {
      if (kappa >= grid || (a == 0 && kappa != 0)) continue;
      if (smin[kappa] <= tol)
        throw SingularSystem(kappa, signed_frequency(kappa, grid));
    }
  }

  const int d = p.dim;
  Vec b(grid * d);
  for (int m = 0; m < grid; ++m)
    b.segment(m * d, d) = synthesize(f, kTwoPi * m / grid);

  Mat S = fd_system_matrix(p, grid);
  Eigen::PartialPivLU<Eigen::Ref<Mat>> lu(S);  // factor in place
  const Vec x = lu.solve(b);

  // Backward error through the generator; S was consumed by the in-place LU.
  double residual_inf = 0.0, x_inf = 0.0, b_inf = 0.0;
  for (int m = 0; m < grid; ++m) {
    const Vec r = generator_matvec(gen, x, m) - b.segment(m * d, d);
    residual_inf = std::max(residual_inf, r.cwiseAbs().maxCoeff());
  }
  x_inf = x.cwiseAbs().maxCoeff();
  b_inf = b.cwiseAbs().maxCoeff();
  double row_sum = 0.0;
  for (int row = 0; row < d; ++row) {
    double acc = 0.0;
    for (int s = 0; s < grid; ++s) acc += gen.blocks[s].row(row).cwiseAbs().sum();
    row_sum = std::max(row_sum, acc);
  }
  const double denom = row_sum * x_inf + b_inf;

  FdSolution sol;
  sol.grid_size = grid;
  sol.samples.reserve(grid);
  for (int m = 0; m < grid; ++m) sol.samples.push_back(x.segment(m * d, d));
  const double smin_all = *std::min_element(smin.begin(), smin.end());
  sol.cond_estimate = smin_all > 0.0 ? scale / smin_all : 0.0;
  sol.backward_error = denom > 0.0 ? residual_inf / denom : residual_inf;
  return sol;
}

double compare(const FdSolution& fd, const PeriodicSolution& spectral) {
  double worst = 0.0;
  for (int m = 0; m < fd.grid_size; ++m) {
    const double t = kTwoPi * m / fd.grid_size;
    worst = std::max(worst, (fd.samples[m] - synthesize(spectral.u, t)).norm());
  }
  return worst;
}

}  // namespace perisolve

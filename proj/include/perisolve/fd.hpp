#pragma once

#include <vector>

#include "perisolve/solve.hpp"
#include "perisolve/symbol.hpp"

namespace perisolve {

struct FdSolution {
  int grid_size;
  std::vector<Vec> samples;  // at t_m = 2 pi m / M
  double cond_estimate;      // from the block-circulant mode symbols
  double backward_error;     // ||S x - b||_inf / (||S||_inf ||x||_inf + ||b||_inf)
};

// The M d x M d collocation matrix: derivative j as the j-th power of the
// periodic central-difference matrix, discrete delays as (interpolated)
// circulant shifts, the kernel by trapezoid over the grid.
Mat fd_system_matrix(const ProblemSpec& p, int grid);

// Mode symbols H(kappa), kappa = 0..M-1, of the block-circulant system; the
// system is invertible iff every symbol is.
std::vector<Mat> fd_mode_symbols(const ProblemSpec& p, int grid);

// Assembles and solves the collocation system for the sampled forcing.
FdSolution solve_fd(const ProblemSpec& p, const TrigPolynomial& f, int grid);

// max over grid nodes of || fd sample - u(t_m) ||.
double compare(const FdSolution& fd, const PeriodicSolution& spectral);

}  // namespace perisolve

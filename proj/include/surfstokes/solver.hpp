#pragma once

#include "surfstokes/assembly.hpp"

namespace surfstokes {

struct SolverOptions {
  enum class Method { Auto, Direct, Iterative };
  Method method = Method::Auto;
  double tol = 1e-10;
  int max_iterations = 20000;        // iterative path
  std::size_t max_dim = 500000;      // overall dimension cap
  std::size_t direct_dim_cap = 20000;  // Auto switches to MINRES above this
  const Eigen::VectorXd* initial_guess = nullptr;  // iterative path only
};

struct SaddleSolution {
  Eigen::VectorXd velocity;  // 2V + 2F
  Eigen::VectorXd pressure;  // V
  double multiplier = 0.0;
  // Relative residuals recomputed from the assembled blocks, independent of
  // the solver's internal bookkeeping.
  double residual_momentum = 0.0;
  double residual_continuity = 0.0;
  double residual_mean = 0.0;
  int iterations = 0;  // 0 on the direct path
};

/// Solve the saddle-point system to the requested blockwise relative residual.
/// Direct sparse LU by default; MINRES with a block-diagonal preconditioner
/// (Cholesky of A, pressure mass) on the iterative path. Throws
/// SolverBreakdown on factorization failure or stagnation.
SaddleSolution solve(const SaddleSystem& sys, const SolverOptions& opts = {});

/// Recompute blockwise relative residuals of a candidate solution.
void verify_residuals(const SaddleSystem& sys, SaddleSolution& sol);

}  // namespace surfstokes

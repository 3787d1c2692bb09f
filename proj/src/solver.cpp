#include "surfstokes/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace surfstokes {

namespace {

// Block-diagonal preconditioner diag(A, Mp, 1) applied through Cholesky
// factorizations; symmetric positive definite as MINRES requires.
class SaddlePreconditioner {
 public:
  using StorageIndex = int;

  SaddlePreconditioner() = default;

  template <typename MatType>
  explicit SaddlePreconditioner(const MatType&) {}

  void attach(const SaddleSystem& sys) {
    nv_ = sys.nv;
    np_ = sys.np;
    a_chol_.compute(sys.A);
    mp_chol_.compute(sys.Mp);
    if (a_chol_.info() != Eigen::Success || mp_chol_.info() != Eigen::Success)
      throw SolverBreakdown("preconditioner factorization failed");
    ready_ = true;
  }

  template <typename MatType>
  SaddlePreconditioner& analyzePattern(const MatType&) { return *this; }
  template <typename MatType>
  SaddlePreconditioner& factorize(const MatType&) { return *this; }
  template <typename MatType>
  SaddlePreconditioner& compute(const MatType&) { return *this; }

  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const {
    Eigen::VectorXd x(b.size());
    x.head(nv_) = a_chol_.solve(b.head(nv_));
    x.segment(nv_, np_) = mp_chol_.solve(b.segment(nv_, np_));
    x[nv_ + np_] = b[nv_ + np_];
    return x;
  }

  Eigen::ComputationInfo info() const {
    return ready_ ? Eigen::Success : Eigen::NumericalIssue;
  }

 private:
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> a_chol_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mp_chol_;
  int nv_ = 0, np_ = 0;
  bool ready_ = false;
};

double rel_norm(const Eigen::VectorXd& r, const Eigen::VectorXd& reference) {
  const double scale = reference.norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

}  // namespace

void verify_residuals(const SaddleSystem& sys, SaddleSolution& sol) {
  const Eigen::VectorXd& u = sol.velocity;
  const Eigen::VectorXd& p = sol.pressure;

  const Eigen::VectorXd r_mom =
      sys.F - (sys.A * u + sys.B.transpose() * p);
  const Eigen::VectorXd r_cont =
      sys.G - (sys.B * u + sol.multiplier * sys.c);
  const double r_mean = sys.c.dot(p);

  // Scale against the data plus the applied operator magnitude so a zero
  // right-hand side with a zero solution reports a zero residual.
  Eigen::VectorXd rhs(sys.total_dim());
  rhs.head(sys.nv) = sys.F;
  rhs.segment(sys.nv, sys.np) = sys.G;
  rhs[sys.nv + sys.np] = 0.0;
  const double scale =
      std::max({rhs.norm(), u.norm(), p.norm(), 1e-300});

  sol.residual_momentum = r_mom.norm() / scale;
  sol.residual_continuity = r_cont.norm() / scale;
  sol.residual_mean = std::abs(r_mean) / scale;
}

SaddleSolution solve(const SaddleSystem& sys, const SolverOptions& opts) {
  if (static_cast<std::size_t>(sys.total_dim()) > opts.max_dim)
    throw SolverBreakdown("solve: system dimension exceeds the configured cap");

  const Eigen::SparseMatrix<double> K = sys.full_matrix();
  const Eigen::VectorXd rhs = sys.full_rhs();
  Eigen::VectorXd x;
  int iterations = 0;

  bool direct = opts.method != SolverOptions::Method::Iterative;
  if (opts.method == SolverOptions::Method::Auto &&
      static_cast<std::size_t>(sys.total_dim()) > opts.direct_dim_cap)
    direct = false;

  if (direct) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success)
      throw SolverBreakdown("sparse LU factorization failed");
    x = lu.solve(rhs);
  } else {
    Eigen::MINRES<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                  SaddlePreconditioner>
        minres;
    minres.preconditioner().attach(sys);
    minres.setTolerance(std::min(opts.tol, 1e-12) * 1e-1);
    minres.setMaxIterations(opts.max_iterations);
    minres.compute(K);
    if (opts.initial_guess != nullptr)
      x = minres.solveWithGuess(rhs, *opts.initial_guess);
    else
      x = minres.solve(rhs);
    iterations = static_cast<int>(minres.iterations());
  }

  SaddleSolution sol;
  sol.velocity = x.head(sys.nv);
  sol.pressure = x.segment(sys.nv, sys.np);
  sol.multiplier = x[sys.nv + sys.np];
  sol.iterations = iterations;
  verify_residuals(sys, sol);
  if (std::max({sol.residual_momentum, sol.residual_continuity,
                sol.residual_mean}) > opts.tol)
    throw SolverBreakdown("solve: verified residual above tolerance");
  return sol;
}

}  // namespace surfstokes

#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

namespace sdl {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct SolverOptions {
  double tol = 1e-12;     // relative residual for the CG fallback
  int max_iter = 20000;   // CG iteration cap
};

/// Symmetric positive definite solve: sparse LDL^T first, conjugate gradient
/// when the factorization fails. Throws NumericalError if both fail.
class SpdSolver {
 public:
  SpdSolver(const SparseMatrix& a, SolverOptions opts = {});
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  bool used_fallback() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves A x = b on the free indices with x fixed on a pinned index set:
/// A_FF x_F = b_F - A_FP x_P. The factorization of A_FF is reused across
/// right-hand sides.
class PinnedSolver {
 public:
  PinnedSolver(const SparseMatrix& a, std::vector<int> pinned, SolverOptions opts = {});

  /// b is a full-length vector (pinned rows ignored); pinned_values[k] is
  /// the value at pinned()[k], in constructor order. Returns the full x.
  Eigen::VectorXd solve(const Eigen::VectorXd& b, const Eigen::VectorXd& pinned_values) const;

  const std::vector<int>& pinned() const { return pinned_; }
  const std::vector<int>& free() const { return free_; }

 private:
  int n_ = 0;
  std::vector<int> pinned_;
  std::vector<int> free_;
  SparseMatrix a_fp_;
  std::unique_ptr<SpdSolver> solver_;
};

}  // namespace sdl

#include "sdl/linalg.hpp"

#include <algorithm>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "sdl/errors.hpp"

namespace sdl {

struct SpdSolver::Impl {
  SparseMatrix a;
  SolverOptions opts;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  bool fallback = false;
};

SpdSolver::SpdSolver(const SparseMatrix& a, SolverOptions opts) : impl_(std::make_unique<Impl>()) {
  impl_->a = a;
  impl_->opts = opts;
  impl_->ldlt.compute(impl_->a);
  impl_->fallback = impl_->ldlt.info() != Eigen::Success;
  if (!impl_->fallback) {
    // LDL^T "succeeds" on indefinite matrices; a non-positive pivot means the
    // system is singular or not SPD.
    const Eigen::VectorXd d = impl_->ldlt.vectorD();
    if (d.size() > 0 && d.minCoeff() <= 0.0) impl_->fallback = true;
  }
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

bool SpdSolver::used_fallback() const { return impl_->fallback; }

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b) const {
  if (!impl_->fallback) {
    Eigen::VectorXd x = impl_->ldlt.solve(b);
    if (impl_->ldlt.info() == Eigen::Success && x.allFinite()) return x;
  }
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(impl_->opts.tol);
  cg.setMaxIterations(impl_->opts.max_iter);
  cg.compute(impl_->a);
  Eigen::VectorXd x = cg.solve(b);
  if (cg.info() != Eigen::Success || !x.allFinite())
    throw NumericalError("linear solve failed: matrix is singular or not positive definite");
  return x;
}

PinnedSolver::PinnedSolver(const SparseMatrix& a, std::vector<int> pinned, SolverOptions opts)
    : n_(static_cast<int>(a.rows())), pinned_(std::move(pinned)) {
  // pinned_ keeps the caller's order: pinned_values[k] belongs to pinned_[k].
  std::vector<int> slot(n_, -1);
  std::vector<bool> is_pinned(n_, false);
  for (int p : pinned_) {
    if (p < 0 || p >= n_) throw DomainError("pinned index out of range");
    if (is_pinned[p]) throw DomainError("pinned index listed twice");
    is_pinned[p] = true;
  }
  for (int i = 0; i < n_; ++i)
    if (!is_pinned[i]) {
      slot[i] = static_cast<int>(free_.size());
      free_.push_back(i);
    }
  std::vector<int> pslot(n_, -1);
  for (std::size_t k = 0; k < pinned_.size(); ++k) pslot[pinned_[k]] = static_cast<int>(k);

  std::vector<Eigen::Triplet<double>> ff;
  std::vector<Eigen::Triplet<double>> fp;
  for (int col = 0; col < a.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (slot[r] < 0) continue;
      if (slot[c] >= 0)
        ff.emplace_back(slot[r], slot[c], it.value());
      else
        fp.emplace_back(slot[r], pslot[c], it.value());
    }
  const auto nf = static_cast<Eigen::Index>(free_.size());
  SparseMatrix a_ff(nf, nf);
  a_ff.setFromTriplets(ff.begin(), ff.end());
  a_fp_.resize(nf, static_cast<Eigen::Index>(pinned_.size()));
  a_fp_.setFromTriplets(fp.begin(), fp.end());
  if (nf > 0) solver_ = std::make_unique<SpdSolver>(a_ff, opts);
}

Eigen::VectorXd PinnedSolver::solve(const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& pinned_values) const {
  if (b.size() != n_) throw DomainError("PinnedSolver: right-hand side has wrong length");
  if (pinned_values.size() != static_cast<Eigen::Index>(pinned_.size()))
    throw DomainError("PinnedSolver: wrong number of pinned values");
  Eigen::VectorXd x(n_);
  for (std::size_t k = 0; k < pinned_.size(); ++k) x[pinned_[k]] = pinned_values[k];
  if (free_.empty()) return x;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(free_.size()));
  for (std::size_t k = 0; k < free_.size(); ++k) rhs[k] = b[free_[k]];
  if (!pinned_.empty()) rhs -= a_fp_ * pinned_values;
  const Eigen::VectorXd xf = solver_->solve(rhs);
  for (std::size_t k = 0; k < free_.size(); ++k) x[free_[k]] = xf[k];
  return x;
}

}  // namespace sdl

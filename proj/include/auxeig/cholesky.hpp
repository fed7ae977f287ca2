#pragma once

#include "auxeig/assembly.hpp"

#include <memory>

namespace auxeig
{

// Sparse Cholesky factorisation of a symmetric positive definite matrix
// (CHOLMOD simplicial when available, Eigen's simplicial LLT otherwise).
class SparseCholesky
{
public:
  explicit SparseCholesky(const SparseSymMatrix& A);
  ~SparseCholesky();
  SparseCholesky(const SparseCholesky&) = delete;
  SparseCholesky& operator=(const SparseCholesky&) = delete;

  Vec solve(const Vec& b) const;
  Mat solve(const Mat& b) const;
  int dim() const { return n_; }
  static const char* backend();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

}  // namespace auxeig

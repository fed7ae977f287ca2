#include "auxeig/cholesky.hpp"

#include "auxeig/errors.hpp"

#ifdef AUXEIG_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#else
#include <Eigen/SparseCholesky>
#endif

namespace auxeig
{

struct SparseCholesky::Impl
{
#ifdef AUXEIG_HAVE_CHOLMOD
  Eigen::CholmodSimplicialLLT<SpMat, Eigen::Lower> llt;
#else
  Eigen::SimplicialLLT<SpMat, Eigen::Lower> llt;
#endif
};

SparseCholesky::SparseCholesky(const SparseSymMatrix& A) : impl_(std::make_unique<Impl>()), n_(A.dim())
{
  if (n_ == 0) return;
#ifdef AUXEIG_HAVE_CHOLMOD
  impl_->llt.cholmod().print = 0;
#endif
  impl_->llt.compute(A.lower());
  if (impl_->llt.info() != Eigen::Success)
    throw MatrixError("sparse Cholesky factorisation failed (matrix not positive definite?)");
}

SparseCholesky::~SparseCholesky() = default;

Vec SparseCholesky::solve(const Vec& b) const
{
  AUXEIG_REQUIRE(b.size() == n_, ContractViolation, "right-hand side size mismatch");
  if (n_ == 0) return Vec(0);
  Vec x = impl_->llt.solve(b);
  return x;
}

Mat SparseCholesky::solve(const Mat& b) const
{
  AUXEIG_REQUIRE(b.rows() == n_, ContractViolation, "right-hand side size mismatch");
  if (n_ == 0) return Mat(0, b.cols());
  Mat x = impl_->llt.solve(b);
  return x;
}

const char* SparseCholesky::backend()
{
#ifdef AUXEIG_HAVE_CHOLMOD
  return "cholmod";
#else
  return "eigen-simplicial";
#endif
}

}  // namespace auxeig

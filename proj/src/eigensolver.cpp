#include "auxeig/eigensolver.hpp"

#include "auxeig/cholesky.hpp"
#include "auxeig/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace auxeig
{

void normalize_signs(Mat& vectors)
{
  for (int j = 0; j < vectors.cols(); ++j)
  {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, j) < 0) vectors.col(j) *= -1.0;
  }
}

Vec check_residuals(const SparseSymMatrix& K, const SparseSymMatrix& M, const EigenResult& result)
{
  AUXEIG_REQUIRE(result.vectors.rows() == K.dim() && K.dim() == M.dim(), ContractViolation,
                 "dimension mismatch in residual check");
  const int r = static_cast<int>(result.values.size());
  Vec res(r);
  if (r == 0) return res;
  const Mat KX = K * result.vectors;
  const Mat MX = M * result.vectors;
  for (int j = 0; j < r; ++j)
  {
    const double nk = KX.col(j).norm();
    const double nr = (KX.col(j) - result.values[j] * MX.col(j)).norm();
    res[j] = nk > 0 ? nr / nk : nr;
  }
  return res;
}

namespace
{

SparseSymMatrix shifted(const SparseSymMatrix& K, const SparseSymMatrix& M, double shift)
{
  if (shift == 0.0) return K;
  SpMat A = K.lower() - shift * M.lower();
  return SparseSymMatrix(A);
}

EigenResult dense_solve(const SparseSymMatrix& K, const SparseSymMatrix& M, int r, double shift)
{
  const Mat A = Mat(shifted(K, M, shift).full());
  const Mat B = Mat(M.full());
  if (Eigen::LLT<Mat>(A).info() != Eigen::Success)
    throw MatrixError("shifted stiffness is not positive definite (dense Cholesky failed)");
  // Pencil (M, K - shift M): theta = 1 / (lambda - shift); K carries the better-scaled Cholesky.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(B, A, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw MatrixError("dense generalized eigensolver failed (factorisation)");
  const int n = static_cast<int>(A.rows());
  EigenResult out;
  out.dense = true;
  out.values.resize(r);
  out.vectors.resize(n, r);
  for (int j = 0; j < r; ++j)
  {
    const int idx = n - 1 - j;
    const double theta = es.eigenvalues()[idx];
    if (!(theta > 0)) throw SolverError("nonpositive pencil eigenvalue; shifted stiffness not positive definite");
    out.values[j] = shift + 1.0 / theta;
    out.vectors.col(j) = es.eigenvectors().col(idx) / std::sqrt(theta);
  }
  return out;
}

// M-orthonormal basis with cached M V and A V = (K - shift M)^{-1} M V.
struct KrylovBasis
{
  Mat V, MV, Z;
  int k = 0;

  KrylovBasis(int n, int cap) : V(n, cap), MV(n, cap), Z(n, cap) {}

  bool add(const SparseSymMatrix& M, Vec x)
  {
    const double orig = std::sqrt(std::max(0.0, x.dot(M * x)));
    if (!(orig > 0) || !std::isfinite(orig)) return false;
    for (int pass = 0; pass < 2 && k > 0; ++pass)
    {
      const Vec c = MV.leftCols(k).transpose() * x;
      x.noalias() -= V.leftCols(k) * c;
    }
    Vec mx = M * x;
    const double nrm = std::sqrt(std::max(0.0, x.dot(mx)));
    if (!(nrm > 1e-10 * orig)) return false;
    V.col(k) = x / nrm;
    MV.col(k) = mx / nrm;
    ++k;
    return true;
  }
};

// Rayleigh-Ritz for the pencil (K, M) on span(Y); Y = A X is one inverse-iteration
// step beyond the Ritz vectors X.
EigenResult polish(const SparseSymMatrix& K, const SparseSymMatrix& M, const Mat& Y, int r)
{
  Mat Kr = Y.transpose() * (K * Y);
  Mat Mr = Y.transpose() * (M * Y);
  Kr = 0.5 * (Kr + Kr.transpose()).eval();
  Mr = 0.5 * (Mr + Mr.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(Kr, Mr, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw SolverError("projected eigenproblem failed");
  EigenResult out;
  out.values = es.eigenvalues().head(r);
  out.vectors = Y * es.eigenvectors().leftCols(r);
  if (!(out.values.minCoeff() > 0)) throw SolverError("nonpositive Ritz value; stiffness not positive definite");
  return out;
}

}  // namespace

EigenResult solve_generalized_symmetric(const SparseSymMatrix& K, const SparseSymMatrix& M, int r,
                                        const SolverOptions& opts)
{
  AUXEIG_REQUIRE(opts.tol > 0, ConfigurationError, "solver tolerance must be positive");
  AUXEIG_REQUIRE(opts.dense_threshold >= 1, ConfigurationError, "dense_threshold must be >= 1");
  const int n = K.dim();
  AUXEIG_REQUIRE(M.dim() == n, ContractViolation, "K and M dimensions differ");
  AUXEIG_REQUIRE(r >= 0 && r <= n, ContractViolation, "requested more eigenpairs than the dimension");

  EigenResult out;
  if (r == 0)
  {
    out.values.resize(0);
    out.vectors.resize(n, 0);
    out.residuals.resize(0);
    return out;
  }

  if (n <= opts.dense_threshold)
  {
    out = dense_solve(K, M, r, opts.shift);
    normalize_signs(out.vectors);
    out.residuals = check_residuals(K, M, out);
    return out;
  }

  const SparseCholesky chol(shifted(K, M, opts.shift));
  const int nwork = std::min(n, std::max(r + 5, opts.block_size));
  const int cap = std::min(n, 4 * nwork);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  KrylovBasis B(n, cap);
  // Random start pushed through the operator once, so the basis carries no rough
  // components that are invisible in the M inner product.
  Mat R0(n, nwork);
  for (int j = 0; j < nwork; ++j)
    for (int i = 0; i < n; ++i) R0(i, j) = normal(rng);
  const Mat start_block = chol.solve(Mat(M * R0));
  for (int j = 0; j < nwork; ++j) B.add(M, start_block.col(j));
  B.Z.leftCols(B.k) = chol.solve(Mat(B.MV.leftCols(B.k)));
  int block_lo = 0, block_hi = B.k;

  double tol_int = opts.tol;
  int iter = 0;
  double worst = 0.0;
  while (iter < opts.max_iterations)
  {
    while (B.k < cap)
    {
      const Mat cand = B.Z.middleCols(block_lo, block_hi - block_lo);
      const int start = B.k;
      for (int j = 0; j < cand.cols() && B.k < cap; ++j) B.add(M, cand.col(j));
      if (B.k == start) break;
      B.Z.middleCols(start, B.k - start) = chol.solve(Mat(B.MV.middleCols(start, B.k - start)));
      block_lo = start;
      block_hi = B.k;
      ++iter;
    }

    const int k = B.k;
    Mat T = B.MV.leftCols(k).transpose() * B.Z.leftCols(k);
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(T);
    const int nw = std::min(nwork, k);
    Mat S(k, nw);
    Vec theta(nw);
    for (int j = 0; j < nw; ++j)
    {
      S.col(j) = es.eigenvectors().col(k - 1 - j);
      theta[j] = es.eigenvalues()[k - 1 - j];
    }
    const Mat X = B.V.leftCols(k) * S;
    const Mat MX = B.MV.leftCols(k) * S;
    const Mat AX = B.Z.leftCols(k) * S;

    bool converged = true;
    worst = 0.0;
    for (int j = 0; j < r; ++j)
    {
      const Vec res = AX.col(j) - theta[j] * X.col(j);
      const double rel = std::sqrt(std::max(0.0, res.dot(M * res))) / std::abs(theta[j]);
      worst = std::max(worst, rel);
      if (!(rel <= tol_int)) converged = false;
    }
    if (k == n) converged = true;

    if (converged)
    {
      out = polish(K, M, AX, r);
      out.residuals = check_residuals(K, M, out);
      if (out.residuals.maxCoeff() <= opts.tol || k == n || tol_int < 1e-15)
      {
        out.iterations = iter;
        normalize_signs(out.vectors);
        return out;
      }
      tol_int *= 1e-2;
    }

    B.V.leftCols(nw) = X;
    B.MV.leftCols(nw) = MX;
    B.Z.leftCols(nw) = AX;
    B.k = nw;
    block_lo = 0;
    block_hi = nw;
    ++iter;
  }
  std::ostringstream os;
  os << "block Krylov eigensolver did not converge in " << opts.max_iterations
     << " iterations (n=" << n << ", r=" << r << ", worst Ritz residual " << worst << ")";
  throw SolverError(os.str());
}

}  // namespace auxeig

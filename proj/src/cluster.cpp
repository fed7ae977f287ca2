#include "auxeig/cluster.hpp"

#include "auxeig/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace auxeig
{

GramPair gram_matrices(const std::vector<ErrorFunction>& errors, const Vec& values, const SparseSymMatrix& K_WW)
{
  const int r = static_cast<int>(errors.size());
  AUXEIG_REQUIRE(r >= 1, ContractViolation, "gram_matrices needs r >= 1");
  AUXEIG_REQUIRE(values.size() >= r, ContractViolation, "gram_matrices: fewer values than error functions");
  GramPair gp;
  gp.G = Mat::Zero(r, r);
  for (int j = 0; j < r; ++j)
  {
    AUXEIG_REQUIRE(values[j] > 0, ContractViolation, "gram_matrices: eigenvalues must be positive");
    gp.G(j, j) = values[j];
  }
  Mat E(K_WW.dim(), r);
  for (int j = 0; j < r; ++j)
  {
    AUXEIG_REQUIRE(errors[j].coefficients.size() == K_WW.dim(), ContractViolation,
                   "gram_matrices: error function has wrong dimension");
    E.col(j) = errors[j].coefficients;
  }
  gp.H_tilde = Mat::Zero(r, r);
  if (K_WW.dim() == 0) return gp;
  const Mat KE = K_WW * E;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j)
    {
      const double v = E.col(i).dot(KE.col(j));
      gp.H_tilde(i, j) = v;
      gp.H_tilde(j, i) = v;
    }
  return gp;
}

Mat reference_H(const Mat& phi, const Mat& psi, const Vec& lambda, const std::vector<int>& cluster,
                const SparseSymMatrix& K_ref)
{
  AUXEIG_REQUIRE(phi.rows() == K_ref.dim() && psi.rows() == K_ref.dim(), ContractViolation,
                 "reference_H: vectors do not live in the reference space");
  for (int k : cluster)
    AUXEIG_REQUIRE(k >= 0 && k < psi.cols() && k < lambda.size(), ContractViolation,
                   "reference_H: cluster index out of range");
  // (I - S) phi formed explicitly; expanding B(phi, phi) - sum b b^T / lambda cancels badly
  // once the coarse vectors are accurate.
  const Mat Kphi = K_ref * phi;
  Mat D = phi;
  for (int k : cluster)
  {
    AUXEIG_REQUIRE(lambda[k] > 0, ContractViolation, "reference_H: reference eigenvalue must be positive");
    const Vec b = Kphi.transpose() * psi.col(k);
    D -= psi.col(k) * (b.transpose() / lambda[k]);
  }
  const Mat H = D.transpose() * (K_ref * D);
  return 0.5 * (H + H.transpose());
}

double constant_C(const Vec& mu_hat, const std::vector<double>& excluded)
{
  AUXEIG_REQUIRE(mu_hat.size() >= 1, ContractViolation, "constant_C needs at least one value");
  double C = 0.0;
  for (Eigen::Index j = 0; j < mu_hat.size(); ++j)
  {
    AUXEIG_REQUIRE(mu_hat[j] > 0, ContractViolation, "constant_C: approximate eigenvalues must be positive");
    for (double xi : excluded)
    {
      const double d = std::abs(xi - mu_hat[j]);
      if (!(d > 1e-14 * std::max(1.0, std::abs(xi))))
        throw PoleError("constant_C: approximate eigenvalue collides with an excluded eigenvalue");
      C = std::max(C, xi / d);
    }
  }
  return C;
}

double constant_C_interval(const Vec& mu_hat, double a, double b)
{
  AUXEIG_REQUIRE(mu_hat.size() >= 1, ContractViolation, "constant_C_interval needs at least one value");
  AUXEIG_REQUIRE(a >= 0 && a < b, ContractViolation, "constant_C_interval needs 0 <= a < b");
  const double lo = mu_hat.minCoeff(), hi = mu_hat.maxCoeff();
  if (!(lo > a) || !(hi < b)) throw PoleError("constant_C_interval: cluster is not inside (a, b)");
  return std::max(a / (lo - a), std::isinf(b) ? 1.0 : b / (b - hi));
}

ClusterBounds cluster_bounds(const GramPair& gp, double C)
{
  const int r = static_cast<int>(gp.G.rows());
  const double C2 = C * C;
  ClusterBounds out;
  double tr = 0.0;
  for (int j = 0; j < r; ++j)
  {
    const double h = gp.H_tilde(j, j), mu = gp.G(j, j);
    tr += h;
    out.single_eigenvalue.push_back(C2 * h);
    out.single_gap_squared.push_back(C2 * h / mu);
    out.eigenvalue_trace += C2 * h;
    out.gap_squared_trace += C2 * h / mu;
  }
  if (r > 0)
  {
    const double gmin = Eigen::SelfAdjointEigenSolver<Mat>(gp.G, Eigen::EigenvaluesOnly).eigenvalues()[0];
    AUXEIG_REQUIRE(gmin > 0, ContractViolation, "cluster_bounds: G is not positive definite");
    out.gap_squared_general = C2 * tr / gmin;
  }
  return out;
}

double hausdorff_distance(const std::vector<double>& A, const std::vector<double>& B)
{
  AUXEIG_REQUIRE(!A.empty() && !B.empty(), ContractViolation, "hausdorff_distance needs non-empty sets");
  auto directed = [](const std::vector<double>& X, const std::vector<double>& Y) {
    double d = 0.0;
    for (double x : X)
    {
      double m = std::numeric_limits<double>::infinity();
      for (double y : Y) m = std::min(m, std::abs(x - y));
      d = std::max(d, m);
    }
    return d;
  };
  return std::max(directed(A, B), directed(B, A));
}

std::vector<double> pencil_spectrum(const Mat& A, const Mat& G)
{
  AUXEIG_REQUIRE(A.rows() == A.cols() && G.rows() == G.cols() && A.rows() == G.rows(), ContractViolation,
                 "pencil_spectrum: dimension mismatch");
  if (A.rows() == 0) return {};
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()), 0.5 * (G + G.transpose()),
                                                   Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("pencil_spectrum: G is not positive definite");
  const Vec v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

SpectralEstimates spectral_estimates(const GramPair& gp)
{
  SpectralEstimates out;
  if (gp.G.rows() == 0) return out;
  out.lambda_max_H =
      std::max(0.0, Eigen::SelfAdjointEigenSolver<Mat>(gp.H_tilde, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
  out.spectrum = pencil_spectrum(gp.H_tilde, gp.G);
  out.gap = std::sqrt(std::max(0.0, out.spectrum.back()));
  double tr = 0.0;
  for (double v : out.spectrum) tr += v;
  out.trace_gap = std::sqrt(std::max(0.0, tr));
  return out;
}

double matrix_norm(const Mat& A, MatrixNorm p)
{
  if (A.size() == 0) return 0.0;
  switch (p)
  {
  case MatrixNorm::One: return A.cwiseAbs().colwise().sum().maxCoeff();
  case MatrixNorm::Inf: return A.cwiseAbs().rowwise().sum().maxCoeff();
  case MatrixNorm::Two: break;
  }
  return Eigen::JacobiSVD<Mat>(A).singularValues()[0];
}

BauerFike bauer_fike_bound(const Mat& H, const Mat& H_tilde, const Mat& G, MatrixNorm p)
{
  AUXEIG_REQUIRE(H.rows() == G.rows() && H_tilde.rows() == G.rows() && G.rows() >= 1, ContractViolation,
                 "bauer_fike_bound: dimension mismatch");
  AUXEIG_REQUIRE(G.isDiagonal(0.0), ContractViolation, "bauer_fike_bound: G must be diagonal");
  const double gmin = G.diagonal().minCoeff();
  AUXEIG_REQUIRE(gmin > 0, ContractViolation, "bauer_fike_bound: G must be positive");
  BauerFike out;
  out.distance = hausdorff_distance(pencil_spectrum(H, G), pencil_spectrum(H_tilde, G));
  out.bound = matrix_norm(H - H_tilde, p) / gmin;
  out.tightness = out.bound > 0 ? out.distance / out.bound : 0.0;
  if (out.distance > out.bound + 1e-12)
    throw InvariantViolation("Bauer-Fike inequality violated: distance " + std::to_string(out.distance) + " > bound " +
                             std::to_string(out.bound));
  return out;
}

Effectivities effectivities(double est_energy, double est_l2, double lambda_hat, double lambda, double err_l2,
                            double err_energy)
{
  Effectivities e;
  const double dl = lambda_hat - lambda;
  if (dl != 0.0 && std::isfinite(dl)) e.eigenvalue = est_energy * est_energy / dl;
  if (err_l2 > 0 && std::isfinite(err_l2)) e.l2 = est_l2 / err_l2;
  if (err_energy > 0 && std::isfinite(err_energy)) e.energy = est_energy / err_energy;
  return e;
}

VectorErrors vector_errors(const Vec& psi, const Vec& psi_hat, const SparseSymMatrix& K, const SparseSymMatrix& M)
{
  AUXEIG_REQUIRE(psi.size() == K.dim() && psi_hat.size() == K.dim(), ContractViolation,
                 "vector_errors: dimension mismatch");
  const double n = std::sqrt(M.bilinear(psi, psi)), nh = std::sqrt(M.bilinear(psi_hat, psi_hat));
  AUXEIG_REQUIRE(n > 0 && nh > 0, ContractViolation, "vector_errors: zero vector");
  const double a = M.bilinear(psi, psi_hat) / (n * nh);
  const Vec d = psi / n - (a < 0 ? -1.0 : 1.0) * psi_hat / nh;
  VectorErrors out;
  out.alpha = std::abs(a);
  out.l2 = std::sqrt(std::max(0.0, M.bilinear(d, d)));
  out.energy = std::sqrt(std::max(0.0, K.bilinear(d, d)));
  return out;
}

double identity_check(const Vec& psi_hat, const Vec& psi, double lambda, double lambda_hat,
                      const SparseSymMatrix& K, const SparseSymMatrix& M)
{
  AUXEIG_REQUIRE(psi.size() == K.dim() && psi_hat.size() == K.dim(), ContractViolation,
                 "identity_check: dimension mismatch");
  const double nn = M.bilinear(psi, psi);
  AUXEIG_REQUIRE(nn > 0, ContractViolation, "identity_check: zero reference vector");
  const Vec d = psi_hat - (M.bilinear(psi, psi_hat) / nn) * psi;
  const double lhs = K.bilinear(d, d) - lambda * M.bilinear(d, d);
  return std::abs(lhs - (lambda_hat - lambda));
}

namespace
{

Mat orthonormal_columns(const Mat& X)
{
  Eigen::ColPivHouseholderQR<Mat> qr(X);
  const int rank = static_cast<int>(qr.rank());
  AUXEIG_REQUIRE(rank == X.cols(), ContractViolation, "subspace_gap: basis is rank deficient");
  return qr.householderQ() * Mat::Identity(X.rows(), rank);
}

}  // namespace

double subspace_gap(const Mat& X, const Mat& Y, const Mat& B)
{
  AUXEIG_REQUIRE(X.rows() == B.rows() && Y.rows() == B.rows() && B.rows() == B.cols(), ContractViolation,
                 "subspace_gap: dimension mismatch");
  Eigen::LLT<Mat> llt(B);
  if (llt.info() != Eigen::Success) throw NumericalError("subspace_gap: B is not positive definite");
  const Mat U = llt.matrixU();
  const Mat Qx = orthonormal_columns(U * X), Qy = orthonormal_columns(U * Y);
  const Mat P = Qx * Qx.transpose() - Qy * Qy.transpose();
  return Eigen::SelfAdjointEigenSolver<Mat>(P, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace auxeig

#pragma once

#include "auxeig/assembly.hpp"
#include "auxeig/source_estimator.hpp"

#include <optional>
#include <vector>

namespace auxeig
{

// G_ij = B(phi_j, phi_i) (diagonal mu_hat for discrete eigenvectors),
// H_tilde_ij = B(eps_j, eps_i).
struct GramPair
{
  Mat G;
  Mat H_tilde;
};

GramPair gram_matrices(const std::vector<ErrorFunction>& errors, const Vec& values, const SparseSymMatrix& K_WW);

// H_ij = B((I-S) phi_j, (I-S) phi_i), S the energy projector onto span{psi_k : k in cluster}.
// phi: embedded coarse vectors (columns); psi: M-orthonormal reference eigenvectors with
// eigenvalues lambda; cluster: 0-based column indices into psi.
Mat reference_H(const Mat& phi, const Mat& psi, const Vec& lambda, const std::vector<int>& cluster,
                const SparseSymMatrix& K_ref);

// max_j max over xi in excluded u {0} of xi / |xi - mu_j|.
double constant_C(const Vec& mu_hat, const std::vector<double>& excluded);
// max{a / (mu_1 - a), b / (b - mu_r)} for a cluster inside (a, b).
double constant_C_interval(const Vec& mu_hat, double a, double b);

struct ClusterBounds
{
  double eigenvalue_trace = 0.0;       // C^2 sum_j H~_jj
  double gap_squared_trace = 0.0;      // C^2 sum_j H~_jj / mu_j
  double gap_squared_general = 0.0;    // C^2 trace(H~) / lambda_min(G), any SPD G
  std::vector<double> single_eigenvalue;   // C^2 H~_jj
  std::vector<double> single_gap_squared;  // C^2 H~_jj / mu_j
};

ClusterBounds cluster_bounds(const GramPair& gp, double C);

// Hausdorff distance between two non-empty finite sets of reals.
double hausdorff_distance(const std::vector<double>& A, const std::vector<double>& B);

// Ascending eigenvalues of the symmetric pencil (A, G), G symmetric positive definite.
std::vector<double> pencil_spectrum(const Mat& A, const Mat& G);

struct SpectralEstimates
{
  double lambda_max_H = 0.0;  // Hausdorff estimate
  double gap = 0.0;           // sqrt(lambda_max(G^-1 H~))
  double trace_gap = 0.0;     // sqrt(trace(G^-1 H~))
  std::vector<double> spectrum;  // Spec(H~, G)
};

SpectralEstimates spectral_estimates(const GramPair& gp);

enum class MatrixNorm
{
  One,
  Two,
  Inf
};

double matrix_norm(const Mat& A, MatrixNorm p);

struct BauerFike
{
  double distance = 0.0;   // dist(Spec(H,G), Spec(H~,G))
  double bound = 0.0;      // ||H - H~||_p / min_j G_jj
  double tightness = 0.0;  // distance / bound (0 when bound == 0)
};

// Throws InvariantViolation when distance > bound + 1e-12. G must be diagonal.
BauerFike bauer_fike_bound(const Mat& H, const Mat& H_tilde, const Mat& G, MatrixNorm p = MatrixNorm::Two);

struct Effectivities
{
  std::optional<double> eigenvalue;  // ||eps||_E^2 / (lambda_hat - lambda)
  std::optional<double> l2;          // ||eps||_0 / ||psi - psi_hat||_0
  std::optional<double> energy;      // ||eps||_E / ||psi - psi_hat||_E
};

Effectivities effectivities(double est_energy, double est_l2, double lambda_hat, double lambda, double err_l2,
                            double err_energy);

struct VectorErrors
{
  double l2 = 0.0;
  double energy = 0.0;
  double alpha = 0.0;
};

// ||psi - psi_hat|| in L2 and energy after unit L2 normalisation with (psi, psi_hat) >= 0.
VectorErrors vector_errors(const Vec& psi, const Vec& psi_hat, const SparseSymMatrix& K, const SparseSymMatrix& M);

// |(||(I-S)psi_hat||_E^2 - lambda ||(I-S)psi_hat||_0^2) - (lambda_hat - lambda)|, S the
// projector onto span{psi}; psi and psi_hat unit in L2.
double identity_check(const Vec& psi_hat, const Vec& psi, double lambda, double lambda_hat,
                      const SparseSymMatrix& K, const SparseSymMatrix& M);

// Gap between span(X) and span(Y) in the inner product of the SPD matrix B
// (dense), computed from the projector difference.
double subspace_gap(const Mat& X, const Mat& Y, const Mat& B);

// One cluster-level summary; reference fields are NaN when no reference was used.
struct ClusterReport
{
  int p = 0;
  int r = 0;
  std::vector<double> lambda_hat;
  double C = 0.0;
  double trace_eig_bound = 0.0;
  double trace_gap_bound = 0.0;
  double hausdorff_est = 0.0;
  double gap_est = 0.0;
  double trace_gap_est = 0.0;
  double bf_bound = 0.0;
  double bf_dist = 0.0;
  double ref_hausdorff = 0.0;
  double ref_gap = 0.0;
  double h_tilde_min_eig = 0.0;
};

}  // namespace auxeig

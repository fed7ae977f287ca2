#include "auxeig/cluster.hpp"
#include "auxeig/errors.hpp"
#include "auxeig/source_estimator.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace auxeig;

namespace
{

SparseSymMatrix sym(const Mat& A) { return SparseSymMatrix(Mat(A.triangularView<Eigen::Lower>()).sparseView()); }

Mat random_matrix(int r, int c, std::mt19937& rng)
{
  std::normal_distribution<double> N;
  Mat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = N(rng);
  return A;
}

Mat random_psd(int n, std::mt19937& rng)
{
  const Mat A = random_matrix(n, n, rng);
  return A * A.transpose();
}

// Real roots of x^3 + a x^2 + b x + c with three real roots, ascending.
std::vector<double> cubic_roots(double a, double b, double c)
{
  const double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
  const double m = 2 * std::sqrt(-p / 3);
  const double t = std::acos(std::clamp(3 * q / (p * m), -1.0, 1.0)) / 3;
  std::vector<double> r;
  for (int k = 0; k < 3; ++k) r.push_back(m * std::cos(t - 2 * std::numbers::pi * k / 3) - a / 3);
  std::sort(r.begin(), r.end());
  return r;
}

struct SquareCluster
{
  Mesh mesh = rectangle_mesh(3, 3);
  DofMap V, W;
  FormSet forms;
  EigenResult pairs;

  explicit SquareCluster(int p, int r)
  {
    const SpacePair sp = build_auxiliary_degrees(assign_degrees(mesh, Family::P, p));
    V = build_dof_map(mesh, sp.primal);
    W = build_dof_map(mesh, sp.auxiliary);
    forms = assemble_forms(mesh, sp, V, W);
    pairs = solve_generalized_symmetric(forms.K_VV, forms.M_VV, r);
  }
};

}  // namespace

TEST_CASE("Gram matrices")
{
  const SquareCluster s(2, 3);
  const auto errs = solve_error_functions(s.forms, s.pairs, 3);
  const GramPair one = gram_matrices({errs[0]}, s.pairs.values, s.forms.K_WW);
  CHECK(one.H_tilde(0, 0) == doctest::Approx(errs[0].energy_norm * errs[0].energy_norm).epsilon(1e-12));
  CHECK(one.G(0, 0) == s.pairs.values[0]);

  const GramPair gp = gram_matrices(errs, s.pairs.values, s.forms.K_WW);
  CHECK(gp.H_tilde(0, 1) == gp.H_tilde(1, 0));
  CHECK(gp.G.isDiagonal(0.0));
  const double hmin = Eigen::SelfAdjointEigenSolver<Mat>(gp.H_tilde).eigenvalues()[0];
  CHECK(hmin >= -1e-12 * gp.H_tilde.norm());

  double prev = 0;
  for (int r = 1; r <= 3; ++r)
  {
    const std::vector<ErrorFunction> sub(errs.begin(), errs.begin() + r);
    const double tr = gram_matrices(sub, s.pairs.values, s.forms.K_WW).H_tilde.trace();
    CHECK(tr >= prev);
    prev = tr;
  }

  std::vector<ErrorFunction> zero = errs;
  for (auto& e : zero) e.coefficients.setZero();
  CHECK(gram_matrices(zero, s.pairs.values, s.forms.K_WW).H_tilde.norm() == 0.0);
  CHECK_THROWS_AS(gram_matrices({}, s.pairs.values, s.forms.K_WW), ContractViolation);
}

TEST_CASE("reference H")
{
  std::mt19937 rng(21);
  const int n = 5;
  const Mat K = random_psd(n, rng) + Mat::Identity(n, n), M = random_psd(n, rng) + Mat::Identity(n, n);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(K, M);
  const Mat psi = es.eigenvectors();
  const Vec lambda = es.eigenvalues();
  const std::vector<int> cluster{0, 1};
  const SparseSymMatrix Ks = sym(K);

  CHECK(reference_H(psi.leftCols(2), psi, lambda, cluster, Ks).norm() <= 1e-12 * lambda[1]);

  // B-orthogonal to the cluster: the projector does nothing.
  const Mat far = psi.col(3);
  CHECK(reference_H(far, psi, lambda, cluster, Ks)(0, 0) == doctest::Approx(far.col(0).dot(K * far.col(0))));

  // Brute force from a K-orthonormal basis of the cluster space.
  const Mat phi = random_matrix(n, 3, rng);
  Mat Q = psi.leftCols(2);
  for (int k = 0; k < 2; ++k) Q.col(k) /= std::sqrt(lambda[k]);
  const Mat D = phi - Q * (Q.transpose() * K * phi);
  const Mat Hb = D.transpose() * K * D;
  CHECK((reference_H(phi, psi, lambda, cluster, Ks) - Hb).norm() <= 1e-10 * Hb.norm());

  CHECK_THROWS_AS(reference_H(phi, psi, lambda, {0, 7}, Ks), ContractViolation);
}

TEST_CASE("constant C")
{
  Vec mu(1);
  mu << 2.1;
  CHECK(constant_C(mu, {0.0, 1.0, 5.0}) == doctest::Approx(5 / 2.9).epsilon(1e-14));
  CHECK(constant_C_interval(mu, 1, 5) == doctest::Approx(5 / 2.9).epsilon(1e-14));
  Vec one(1);
  one << 1.0;
  CHECK(constant_C_interval(one, 0.5, 1e6) == doctest::Approx(1e6 / (1e6 - 1)).epsilon(1e-14));
  CHECK(constant_C_interval(one, 0.0, std::numeric_limits<double>::infinity()) == 1.0);

  Vec pole(1);
  pole << 5.0;
  CHECK_THROWS_AS(constant_C(pole, {1.0, 5.0}), PoleError);
  CHECK_THROWS_AS(constant_C_interval(pole, 1, 5), PoleError);
  CHECK_THROWS_AS(constant_C_interval(mu, 3, 2), ContractViolation);
  CHECK_THROWS_AS(constant_C_interval(mu, -1, 5), ContractViolation);
}

TEST_CASE("cluster bounds")
{
  GramPair gp;
  gp.G = Mat::Zero(2, 2);
  gp.G.diagonal() << 4, 9;
  gp.H_tilde = Mat::Zero(2, 2);
  gp.H_tilde.diagonal() << 0.04, 0.09;
  const ClusterBounds b = cluster_bounds(gp, 1.0);
  CHECK(b.eigenvalue_trace == doctest::Approx(0.13).epsilon(1e-14));
  CHECK(b.gap_squared_trace == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(b.gap_squared_general == doctest::Approx(0.13 / 4).epsilon(1e-14));
  CHECK(cluster_bounds(gp, 2.0).eigenvalue_trace == doctest::Approx(0.52).epsilon(1e-14));

  GramPair single;
  single.G = Mat::Constant(1, 1, 3.0);
  single.H_tilde = Mat::Constant(1, 1, 0.3);
  const ClusterBounds s = cluster_bounds(single, 1.5);
  CHECK(s.eigenvalue_trace == s.single_eigenvalue[0]);
  CHECK(s.gap_squared_trace == s.single_gap_squared[0]);

  gp.H_tilde.setZero();
  const ClusterBounds z = cluster_bounds(gp, 3.0);
  CHECK(z.eigenvalue_trace == 0.0);
  CHECK(z.gap_squared_trace == 0.0);
  CHECK(z.gap_squared_general == 0.0);

  // Non-diagonal G: the general bound uses its smallest eigenvalue.
  GramPair g2;
  g2.G = (Mat(2, 2) << 2, 1, 1, 2).finished();
  g2.H_tilde = Mat::Identity(2, 2);
  CHECK(cluster_bounds(g2, 1.0).gap_squared_general == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Hausdorff distance")
{
  CHECK(hausdorff_distance({1, 3}, {1.1, 2.5}) == doctest::Approx(0.5));
  CHECK(hausdorff_distance({1, 2, 3}, {3, 2, 1}) == 0.0);
  CHECK(hausdorff_distance({0}, {0, 10}) == 10.0);
  CHECK_THROWS_AS(hausdorff_distance({}, {1}), ContractViolation);
}

TEST_CASE("spectral estimates")
{
  std::mt19937 rng(4);
  GramPair gp;
  gp.G = Mat::Zero(3, 3);
  gp.G.diagonal() << 2, 3, 5;
  gp.H_tilde = gp.G;
  SpectralEstimates e = spectral_estimates(gp);
  for (double v : e.spectrum) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e.gap == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e.lambda_max_H == doctest::Approx(5.0).epsilon(1e-13));

  gp.H_tilde.setZero();
  e = spectral_estimates(gp);
  CHECK(e.gap == 0.0);
  CHECK(e.trace_gap == 0.0);
  CHECK(e.lambda_max_H == 0.0);

  for (int t = 0; t < 5; ++t)
  {
    const Mat H = random_psd(3, rng);
    gp.G = Mat::Identity(3, 3);
    gp.H_tilde = H;
    e = spectral_estimates(gp);
    const double c2 = H(0, 0) * H(1, 1) + H(0, 0) * H(2, 2) + H(1, 1) * H(2, 2) - H(0, 1) * H(0, 1) -
                      H(0, 2) * H(0, 2) - H(1, 2) * H(1, 2);
    const auto roots = cubic_roots(-H.trace(), c2, -H.determinant());
    for (int k = 0; k < 3; ++k) CHECK(std::abs(e.spectrum[k] - roots[k]) <= 1e-10 * roots[2]);
    CHECK(e.gap == doctest::Approx(std::sqrt(roots[2])).epsilon(1e-10));
    CHECK(e.trace_gap == doctest::Approx(std::sqrt(roots[0] + roots[1] + roots[2])).epsilon(1e-10));
  }
}

TEST_CASE("matrix norms and Bauer-Fike")
{
  const Mat A = (Mat(2, 2) << 1, -2, 3, 4).finished();
  CHECK(matrix_norm(A, MatrixNorm::One) == 6.0);
  CHECK(matrix_norm(A, MatrixNorm::Inf) == 7.0);
  CHECK(matrix_norm(A, MatrixNorm::Two) == doctest::Approx(std::sqrt(15 + std::sqrt(125.0))).epsilon(1e-14));

  const Mat I = Mat::Identity(2, 2);
  const Mat H = (Mat(2, 2) << 1, 0, 0, 4).finished(), Ht = (Mat(2, 2) << 1.1, 0, 0, 4).finished();
  BauerFike bf = bauer_fike_bound(H, Ht, I);
  CHECK(bf.distance == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(bf.bound == doctest::Approx(0.1).epsilon(1e-12));
  bf = bauer_fike_bound(H, H, I);
  CHECK(bf.distance == 0.0);
  CHECK(bf.bound == 0.0);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0.5, 3);
  for (int t = 0; t < 50; ++t)
  {
    const Mat H4 = random_psd(4, rng);
    const Mat P = 0.1 * random_matrix(4, 4, rng);
    const Mat Ht4 = H4 + P * P.transpose();
    Mat G = Mat::Zero(4, 4);
    for (int j = 0; j < 4; ++j) G(j, j) = U(rng);
    for (MatrixNorm p : {MatrixNorm::One, MatrixNorm::Two, MatrixNorm::Inf})
    {
      const BauerFike b = bauer_fike_bound(H4, Ht4, G, p);
      CHECK(b.distance <= b.bound + 1e-12);
    }
  }
  CHECK_THROWS_AS(bauer_fike_bound(H, Ht, (Mat(2, 2) << 1, 0.1, 0.1, 1).finished()), ContractViolation);
}

TEST_CASE("effectivities")
{
  const Effectivities e = effectivities(0.3, 0.02, 2.09, 2.0, 0.02, 0.3);
  CHECK(*e.eigenvalue == doctest::Approx(1.0));
  CHECK(*e.l2 == doctest::Approx(1.0));
  CHECK(*e.energy == doctest::Approx(1.0));
  const Effectivities d = effectivities(0.3, 0.02, 2.0, 2.0, 0.0, 0.0);
  CHECK_FALSE(d.eigenvalue.has_value());
  CHECK_FALSE(d.l2.has_value());
  CHECK_FALSE(d.energy.has_value());

  const double lambda = 2 * std::numbers::pi * std::numbers::pi;
  const Mesh m = rectangle_mesh(2, 2);
  const SpacePair sp = build_auxiliary_degrees(assign_degrees(m, Family::P, 3));
  const DofMap V = build_dof_map(m, sp.primal), W = build_dof_map(m, sp.auxiliary);
  const FormSet f = assemble_forms(m, sp, V, W);
  const EigenResult pairs = solve_generalized_symmetric(f.K_VV, f.M_VV, 1);
  const auto errs = solve_error_functions(f, pairs, 1);
  const Effectivities u = effectivities(errs[0].energy_norm, errs[0].l2_norm, pairs.values[0], lambda, 1, 1);
  CHECK(*u.eigenvalue >= 0.5);
  CHECK(*u.eigenvalue <= 2.0);
}

TEST_CASE("vector errors and the eigenvalue identity")
{
  std::mt19937 rng(8);
  const Mat K = random_psd(3, rng) + Mat::Identity(3, 3), M = random_psd(3, rng) + Mat::Identity(3, 3);
  const SparseSymMatrix Ks = sym(K), Ms = sym(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(K, M);
  for (int i = 0; i < 3; ++i)
  {
    const Vec psi = es.eigenvectors().col(i);
    const double lam = es.eigenvalues()[i];
    CHECK(identity_check(psi, psi, lam, lam, Ks, Ms) <= 1e-12 * lam);
    Vec psi_hat = psi + 0.2 * random_matrix(3, 1, rng).col(0);
    psi_hat /= std::sqrt(psi_hat.dot(M * psi_hat));
    const double rq = psi_hat.dot(K * psi_hat);
    CHECK(identity_check(psi_hat, psi, lam, rq, Ks, Ms) <= 1e-12 * rq);
  }

  const Vec psi = es.eigenvectors().col(0);
  const VectorErrors flipped = vector_errors(psi, Vec(-2.0 * psi), Ks, Ms);
  CHECK(flipped.l2 <= 1e-14);
  CHECK(flipped.energy <= 1e-13);
  CHECK(flipped.alpha == doctest::Approx(1.0));
  const VectorErrors orth = vector_errors(psi, es.eigenvectors().col(1), Ks, Ms);
  CHECK(orth.l2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(orth.alpha <= 1e-14);
}

TEST_CASE("gap from the Gram pencil equals the principal-angle gap")
{
  std::mt19937 rng(33);
  const int n = 8;
  const Mat K = random_psd(n, rng) + Mat::Identity(n, n), M = random_psd(n, rng) + Mat::Identity(n, n);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(K, M);
  const Mat psi = es.eigenvectors();
  const Vec lambda = es.eigenvalues();
  for (double eps : {1e-3, 1e-2, 0.1})
  {
    // Ritz vectors of a perturbed cluster basis: K- and M-orthogonal, so G is diagonal.
    const Mat X = psi.leftCols(2) + eps * random_matrix(n, 2, rng);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> rr(X.transpose() * K * X, X.transpose() * M * X);
    const Mat phi = X * rr.eigenvectors();
    Mat G = Mat::Zero(2, 2);
    G.diagonal() = rr.eigenvalues();
    const Mat H = reference_H(phi, psi, lambda, {0, 1}, sym(K));
    const auto spec = pencil_spectrum(H, G);
    REQUIRE(spec.back() < 1);
    CHECK(std::sqrt(spec.back()) == doctest::Approx(subspace_gap(phi, psi.leftCols(2), K)).epsilon(1e-10));
  }
}

TEST_CASE("cluster quantities are invariant under rotation in a degenerate block")
{
  // Modes 2 and 3 of the unit square coincide on a symmetric mesh.
  const SquareCluster s(3, 3);
  REQUIRE(std::abs(s.pairs.values[1] - s.pairs.values[2]) <= 1e-10 * s.pairs.values[1]);
  const GramPair a = gram_matrices(solve_error_functions(s.forms, s.pairs, 3), s.pairs.values, s.forms.K_WW);
  EigenResult rot = s.pairs;
  const double c = std::cos(0.7), sn = std::sin(0.7);
  rot.vectors.col(1) = c * s.pairs.vectors.col(1) + sn * s.pairs.vectors.col(2);
  rot.vectors.col(2) = -sn * s.pairs.vectors.col(1) + c * s.pairs.vectors.col(2);
  const GramPair b = gram_matrices(solve_error_functions(s.forms, rot, 3), rot.values, s.forms.K_WW);
  const SpectralEstimates ea = spectral_estimates(a), eb = spectral_estimates(b);
  CHECK(std::abs(ea.lambda_max_H - eb.lambda_max_H) <= 1e-8 * ea.lambda_max_H);
  CHECK(std::abs(ea.trace_gap - eb.trace_gap) <= 1e-8 * ea.trace_gap);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(ea.spectrum[k] - eb.spectrum[k]) <= 1e-8 * ea.spectrum[2]);
}

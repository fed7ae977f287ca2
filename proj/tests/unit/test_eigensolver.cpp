#include "auxeig/eigensolver.hpp"
#include "auxeig/errors.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace auxeig;

namespace
{

SparseSymMatrix sym(const Mat& A) { return SparseSymMatrix(Mat(A.triangularView<Eigen::Lower>()).sparseView()); }

Mat random_spd(int n, std::mt19937& rng, double shift)
{
  std::normal_distribution<double> N;
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = N(rng);
  return A * A.transpose() + shift * Mat::Identity(n, n);
}

SpaceForms square_forms(int n, int p)
{
  const Mesh m = rectangle_mesh(n, n);
  return assemble_space(m, build_dof_map(m, assign_degrees(m, Family::P, p)));
}

void check_contract(const SparseSymMatrix& K, const SparseSymMatrix& M, const EigenResult& e, double tol)
{
  const Mat MX = M * e.vectors;
  const Mat gram = e.vectors.transpose() * MX;
  CHECK((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10);
  for (Eigen::Index i = 0; i + 1 < e.values.size(); ++i) CHECK(e.values[i] <= e.values[i + 1]);
  CHECK(e.values.minCoeff() > 0);
  CHECK(check_residuals(K, M, e).maxCoeff() <= tol);
}

}  // namespace

TEST_CASE("diagonal problem")
{
  Mat K = Mat::Zero(3, 3);
  K.diagonal() << 1, 2, 3;
  const SparseSymMatrix Ks = sym(K), I = sym(Mat::Identity(3, 3));
  const EigenResult e = solve_generalized_symmetric(Ks, I, 2);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));
  CHECK(check_residuals(Ks, I, e).maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("random SPD pencil matches the dense oracle")
{
  std::mt19937 rng(3);
  const Mat K = random_spd(5, rng, 0.5), M = random_spd(5, rng, 1.0);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> oracle(K, M);
  const EigenResult e = solve_generalized_symmetric(sym(K), sym(M), 5);
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(e.values[i] - oracle.eigenvalues()[i]) <= 1e-9 * oracle.eigenvalues()[i]);
  check_contract(sym(K), sym(M), e, 1e-10);
}

TEST_CASE("iterative path agrees with the dense path")
{
  const SpaceForms f = square_forms(6, 3);
  SolverOptions dense, iter;
  iter.dense_threshold = 1;
  const EigenResult a = solve_generalized_symmetric(f.K, f.M, 6, dense);
  const EigenResult b = solve_generalized_symmetric(f.K, f.M, 6, iter);
  CHECK(a.dense);
  CHECK_FALSE(b.dense);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9 * a.values[i]);
  check_contract(f.K, f.M, b, iter.tol);

  // Fixed seed gives identical output.
  const EigenResult c = solve_generalized_symmetric(f.K, f.M, 6, iter);
  CHECK((b.values - c.values).norm() == 0.0);
  CHECK((b.vectors - c.vectors).norm() == 0.0);
}

TEST_CASE("unit square values are upper bounds and decrease with p")
{
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double exact[4] = {2 * pi2, 5 * pi2, 5 * pi2, 8 * pi2};
  Vec prev;
  for (int p = 1; p <= 6; ++p)
  {
    const SpaceForms f = square_forms(3, p);
    if (f.K.dim() < 4) continue;
    const EigenResult e = solve_generalized_symmetric(f.K, f.M, 4);
    for (int k = 0; k < 4; ++k) CHECK(e.values[k] >= exact[k] * (1 - 1e-9));
    if (prev.size() == 4)
      for (int k = 0; k < 4; ++k) CHECK(e.values[k] <= prev[k] + 1e-9);
    prev = e.values;
  }
  CHECK(prev[0] == doctest::Approx(2 * pi2).epsilon(1e-6));
}

TEST_CASE("scaling K scales the values")
{
  const SpaceForms f = square_forms(3, 3);
  const SparseSymMatrix K2(SpMat(2.0 * f.K.lower()));
  for (int thr : {2000, 1})
  {
    SolverOptions o;
    o.dense_threshold = thr;
    const EigenResult a = solve_generalized_symmetric(f.K, f.M, 3, o);
    const EigenResult b = solve_generalized_symmetric(K2, f.M, 3, o);
    for (int k = 0; k < 3; ++k) CHECK(b.values[k] == doctest::Approx(2 * a.values[k]).epsilon(1e-12));
    // First mode is simple, so its vector is unique up to the sign convention.
    CHECK((a.vectors.col(0) - b.vectors.col(0)).norm() <= 1e-8);
  }
}

TEST_CASE("residuals grow linearly with a perturbation")
{
  Mat K = Mat::Zero(4, 4);
  K.diagonal() << 1, 3, 4, 9;
  const SparseSymMatrix Ks = sym(K), I = sym(Mat::Identity(4, 4));
  EigenResult e = solve_generalized_symmetric(Ks, I, 1);
  CHECK(check_residuals(Ks, I, e)[0] <= 1e-15);
  const Vec dir = Vec::Ones(4).normalized();
  double last = 0;
  for (double d : {1e-3, 2e-3, 4e-3})
  {
    EigenResult p = e;
    p.vectors.col(0) += d * dir;
    const double res = check_residuals(Ks, I, p)[0];
    if (last > 0) CHECK(res / last == doctest::Approx(2.0).epsilon(0.01));
    last = res;
  }
}

TEST_CASE("solver errors")
{
  const SpaceForms f = square_forms(3, 2);
  CHECK_THROWS_AS(solve_generalized_symmetric(f.K, f.M, f.K.dim() + 1), ContractViolation);
  SolverOptions bad;
  bad.tol = 0;
  CHECK_THROWS_AS(solve_generalized_symmetric(f.K, f.M, 1, bad), ConfigurationError);
  SolverOptions stuck;
  stuck.dense_threshold = 1;
  stuck.max_iterations = 0;
  CHECK_THROWS_AS(solve_generalized_symmetric(f.K, f.M, 2, stuck), SolverError);

  Mat Kn = Mat::Identity(3, 3);
  Kn(1, 1) = -1;
  CHECK_THROWS_AS(solve_generalized_symmetric(sym(Kn), sym(Mat::Identity(3, 3)), 2), MatrixError);
  SolverOptions sparse;
  sparse.dense_threshold = 1;
  CHECK_THROWS_AS(solve_generalized_symmetric(sym(Kn), sym(Mat::Identity(3, 3)), 2, sparse), MatrixError);
  CHECK(solve_generalized_symmetric(f.K, f.M, 0).values.size() == 0);
}

TEST_CASE("sign convention")
{
  Mat V(3, 2);
  V << 0.1, 0.5, -0.9, -0.7, 0.2, 0.1;
  normalize_signs(V);
  CHECK(V(1, 0) > 0);
  CHECK(V(1, 1) > 0);
  CHECK(V(0, 1) < 0);
}

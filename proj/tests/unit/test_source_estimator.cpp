#include "auxeig/errors.hpp"
#include "auxeig/quadrature.hpp"
#include "auxeig/source_estimator.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

using namespace auxeig;

namespace
{

struct Setup
{
  Mesh mesh;
  SpacePair pair;
  DofMap V, W;
  FormSet forms;

  Setup(Mesh m, Family fam, int p, AssemblyOptions opts = {}) : mesh(std::move(m))
  {
    pair.primal = assign_degrees(mesh, fam, p);
    pair = build_auxiliary_degrees(pair.primal);
    V = build_dof_map(mesh, pair.primal);
    W = build_dof_map(mesh, pair.auxiliary);
    forms = assemble_forms(mesh, pair, V, W, opts);
  }
};

Mesh neumann_quad()
{
  MeshBuilder b;
  const int v[4] = {b.add_vertex({0, 0}), b.add_vertex({1, 0}), b.add_vertex({1, 1}), b.add_vertex({0, 1})};
  b.add_element(ElementKind::Quadrilateral, v);
  for (int k = 0; k < 4; ++k) b.set_boundary(v[k], v[(k + 1) % 4], {BoundaryCondition::Neumann, "w"});
  return b.finalize();
}

Vec random_vec(int n, std::mt19937& rng)
{
  std::normal_distribution<double> N;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = N(rng);
  return v;
}

}  // namespace

TEST_CASE("zero source gives a zero right-hand side")
{
  const Setup s(rectangle_mesh(2, 2), Family::P, 2);
  const Vec rhs = error_rhs(s.forms, 3.0, Vec::Zero(s.V.size));
  CHECK(rhs.size() == s.W.size);
  CHECK(rhs.norm() == 0.0);
  CHECK_THROWS_AS(error_rhs(s.forms, 3.0, Vec::Zero(s.V.size + 1)), ContractViolation);
}

TEST_CASE("an enriched-space eigenpair lying in V has no error")
{
  // Constants are eigenfunctions with eigenvalue 0 of the pure Neumann problem on any space.
  const Setup s(neumann_quad(), Family::P, 1);
  REQUIRE(s.V.size == 4);
  const Vec phi = Vec::Ones(4);
  const Vec rhs = error_rhs(s.forms, 0.0, phi);
  CHECK(rhs.cwiseAbs().maxCoeff() <= 1e-14);
  const Vec eps = SparseCholesky(s.forms.K_WW).solve(rhs);
  CHECK(eps.cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("right-hand side entries match field-wise quadrature")
{
  std::mt19937 rng(5);
  for (int slit : {0, 1})
  {
    DomainSpec d;
    d.domain = DomainType::SlitDisk;
    d.grading_layers = 1;
    AssemblyOptions opts;
    opts.quad_increment = slit ? 24 : 0;
    const Setup s(slit ? build_domain_mesh(d) : rectangle_mesh(3, 2), Family::P, 2, opts);
    const double mu = 7.3;
    const Vec v = random_vec(s.V.size, rng);
    const Vec rhs = error_rhs(s.forms, mu, v);
    const FieldEvaluator fv(s.mesh, s.V, v);
    const double tol = slit ? 1e-9 : 1e-12;
    for (int i = 0; i < s.W.size; i += std::max(1, s.W.size / 12))
    {
      const FieldEvaluator fw(s.mesh, s.W, Vec::Unit(s.W.size, i));
      double oracle = 0, scale = 0;
      for (int el = 0; el < s.mesh.num_elements(); ++el)
      {
        const auto& rule = quadrature_for(s.mesh.elements[el].kind, slit ? 40 : 12);
        for (std::size_t q = 0; q < rule.weights.size(); ++q)
        {
          const auto [x, y] = rule.points[q];
          const double jw = rule.weights[q] * std::abs(map_element_point(s.mesh, el, x, y).det());
          const auto a = fv.eval_reference(el, x, y), b = fw.eval_reference(el, x, y);
          const double t = mu * a.value * b.value - (a.grad[0] * b.grad[0] + a.grad[1] * b.grad[1]);
          oracle += jw * t;
          scale += jw * std::abs(t);
        }
      }
      CHECK(std::abs(rhs[i] - oracle) <= tol * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("error functions solve the auxiliary system")
{
  const Setup s(rectangle_mesh(3, 3), Family::P, 2);
  const EigenResult pairs = solve_generalized_symmetric(s.forms.K_VV, s.forms.M_VV, 3);
  CHECK(solve_error_functions(s.forms, pairs, 0).empty());
  CHECK_THROWS_AS(solve_error_functions(s.forms, pairs, 4), ContractViolation);
  const auto errs = solve_error_functions(s.forms, pairs, 3);
  REQUIRE(errs.size() == 3);
  std::mt19937 rng(9);
  for (int j = 0; j < 3; ++j)
  {
    const ErrorFunction& e = errs[j];
    CHECK(e.source == j);
    const Vec rhs = error_rhs(s.forms, pairs.values[j], pairs.vectors.col(j));
    const Vec Ke = s.forms.K_WW * e.coefficients;
    CHECK((Ke - rhs).norm() <= 1e-10 * rhs.norm());
    for (int t = 0; t < 10; ++t)
    {
      const Vec v = random_vec(s.W.size, rng);
      CHECK(std::abs(Ke.dot(v) - rhs.dot(v)) <= 1e-10 * rhs.cwiseAbs().dot(v.cwiseAbs()));
    }
    CHECK(e.energy_norm == doctest::Approx(std::sqrt(s.forms.K_WW.bilinear(e.coefficients, e.coefficients))).epsilon(1e-12));
    CHECK(e.l2_norm == doctest::Approx(std::sqrt(s.forms.M_WW.bilinear(e.coefficients, e.coefficients))).epsilon(1e-12));
    // Linearity in the source.
    const Vec r3 = error_rhs(s.forms, pairs.values[j], 3.0 * Vec(pairs.vectors.col(j)));
    CHECK((r3 - 3.0 * rhs).norm() <= 1e-14 * r3.norm());
  }
}

TEST_CASE("eigenvalue effectivity on the unit square")
{
  const double lambda = 2 * std::numbers::pi * std::numbers::pi;
  const Setup s(rectangle_mesh(4, 4), Family::P, 1);
  const EigenResult pairs = solve_generalized_symmetric(s.forms.K_VV, s.forms.M_VV, 1);
  const auto errs = solve_error_functions(s.forms, pairs, 1);
  const double ratio = errs[0].energy_norm * errs[0].energy_norm / (pairs.values[0] - lambda);
  CHECK(ratio >= 0.5);
  CHECK(ratio <= 2.0);
}

TEST_CASE("reference source error brackets the estimate")
{
  const Mesh m = rectangle_mesh(3, 3);
  const Setup s(m, Family::P, 2);
  const DofMap R = build_dof_map(m, assign_degrees(m, Family::P, 8));
  const SpaceForms ref = assemble_space(m, R);
  const auto embed = embedding(s.V, R);
  const EigenResult pairs = solve_generalized_symmetric(s.forms.K_VV, s.forms.M_VV, 4);
  const auto errs = solve_error_functions(s.forms, pairs, 4);
  for (int j = 0; j < 4; ++j)
  {
    const Vec phi = pairs.vectors.col(j);
    const double ref_err = reference_source_error(ref, embed, pairs.values[j] * phi, phi);
    CHECK(errs[j].energy_norm <= ref_err + 1e-8);
    CHECK(ref_err <= 3 * errs[j].energy_norm);
  }

  // The reference solution itself has zero error.
  const Vec f = Vec::LinSpaced(s.V.size, -1, 1);
  const Vec u_ref = SparseCholesky(ref.K).solve(Vec(ref.M * embed_coefficients(embed, R.size, f)));
  std::vector<int> identity(R.size);
  for (int i = 0; i < R.size; ++i) identity[i] = i;
  CHECK(reference_source_error(ref, identity, embed_coefficients(embed, R.size, f), u_ref) <= 1e-10 * u_ref.norm());

  std::vector<int> bad = embed;
  bad.back() = R.size + 3;
  CHECK_THROWS_AS(reference_source_error(ref, bad, f, f), ConfigurationError);
}

TEST_CASE("singular auxiliary stiffness is a matrix error")
{
  Setup s(rectangle_mesh(2, 2), Family::P, 2);
  SpMat zero(s.W.size, s.W.size);
  s.forms.K_WW = SparseSymMatrix(zero);
  const EigenResult pairs = solve_generalized_symmetric(s.forms.K_VV, s.forms.M_VV, 1);
  CHECK_THROWS_AS(solve_error_functions(s.forms, pairs, 1), MatrixError);
}

TEST_CASE("error function samples")
{
  DomainSpec d;
  d.domain = DomainType::SlitDisk;
  d.grading_layers = 1;
  const Setup s(build_domain_mesh(d), Family::P, 2);
  const EigenResult pairs = solve_generalized_symmetric(s.forms.K_VV, s.forms.M_VV, 1);
  const auto errs = solve_error_functions(s.forms, pairs, 1);
  const std::string path = "error_samples_test.csv";
  write_error_samples(s.mesh, s.W, errs[0], 9, 9, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,value");
  int rows = 0;
  while (std::getline(in, line))
  {
    double x, y, v;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) == 3);
    CHECK(std::hypot(x, y) <= 1 + 1e-9);
    CHECK(std::isfinite(v));
    ++rows;
  }
  CHECK(rows > 0);
  CHECK(rows < 81);
  std::remove(path.c_str());
}

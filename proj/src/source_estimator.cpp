#include "auxeig/source_estimator.hpp"

#include "auxeig/cholesky.hpp"
#include "auxeig/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace auxeig
{

Vec error_rhs(const FormSet& forms, double mu_hat, const Vec& phi_hat)
{
  AUXEIG_REQUIRE(phi_hat.size() == forms.K_WV.cols() && forms.M_WV.cols() == phi_hat.size(), ContractViolation,
                 "error_rhs: phi has wrong dimension");
  return mu_hat * (forms.M_WV * phi_hat) - forms.K_WV * phi_hat;
}

std::vector<ErrorFunction> solve_error_functions(const FormSet& forms, const EigenResult& pairs, int r)
{
  AUXEIG_REQUIRE(r >= 0 && r <= pairs.values.size(), ContractViolation,
                 "solve_error_functions: r exceeds the number of computed pairs");
  std::vector<ErrorFunction> out;
  if (r == 0) return out;
  const int nW = forms.K_WW.dim();
  Mat rhs(nW, r);
  for (int j = 0; j < r; ++j) rhs.col(j) = error_rhs(forms, pairs.values[j], pairs.vectors.col(j));
  Mat eps = Mat::Zero(nW, r);
  if (nW > 0)
  {
    const SparseCholesky chol(forms.K_WW);
    eps = chol.solve(rhs);
  }
  for (int j = 0; j < r; ++j)
  {
    ErrorFunction e;
    e.coefficients = eps.col(j);
    e.energy_norm = std::sqrt(std::max(0.0, forms.K_WW.bilinear(e.coefficients, e.coefficients)));
    e.l2_norm = std::sqrt(std::max(0.0, forms.M_WW.bilinear(e.coefficients, e.coefficients)));
    e.source = j;
    out.push_back(std::move(e));
  }
  return out;
}

Vec embed_coefficients(const std::vector<int>& embed, int ref_size, const Vec& coarse)
{
  AUXEIG_REQUIRE(coarse.size() == static_cast<Eigen::Index>(embed.size()), ContractViolation,
                 "embedding size mismatch");
  Vec out = Vec::Zero(ref_size);
  for (std::size_t i = 0; i < embed.size(); ++i)
  {
    AUXEIG_REQUIRE(embed[i] >= 0 && embed[i] < ref_size, ContractViolation, "embedding index out of range");
    out[embed[i]] = coarse[i];
  }
  return out;
}

Mat embed_coefficients(const std::vector<int>& embed, int ref_size, const Mat& coarse)
{
  AUXEIG_REQUIRE(coarse.rows() == static_cast<Eigen::Index>(embed.size()), ContractViolation,
                 "embedding size mismatch");
  Mat out = Mat::Zero(ref_size, coarse.cols());
  for (std::size_t i = 0; i < embed.size(); ++i)
  {
    AUXEIG_REQUIRE(embed[i] >= 0 && embed[i] < ref_size, ContractViolation, "embedding index out of range");
    out.row(embed[i]) = coarse.row(i);
  }
  return out;
}

double reference_source_error(const SpaceForms& ref, const std::vector<int>& embed, const Vec& f, const Vec& u_hat)
{
  const SparseCholesky chol(ref.K);
  return reference_source_error(chol, ref, embed, f, u_hat);
}

double reference_source_error(const SparseCholesky& chol, const SpaceForms& ref, const std::vector<int>& embed,
                              const Vec& f, const Vec& u_hat)
{
  if (embed.empty() && f.size() > 0) throw ConfigurationError("reference_source_error: no embedding available");
  const int n = ref.K.dim();
  AUXEIG_REQUIRE(chol.dim() == n, ContractViolation, "reference factorisation has the wrong size");
  std::vector<char> used(n, 0);
  for (int k : embed)
  {
    if (k < 0 || k >= n || used[k]) throw ConfigurationError("reference_source_error: embedding is not injective into the reference space");
    used[k] = 1;
  }
  const Vec fr = embed_coefficients(embed, n, f);
  const Vec ur = embed_coefficients(embed, n, u_hat);
  const Vec u = chol.solve(Vec(ref.M * fr));
  const Vec d = u - ur;
  return std::sqrt(std::max(0.0, ref.K.bilinear(d, d)));
}

void write_error_samples(const Mesh& mesh, const DofMap& dofW, const ErrorFunction& eps, int nx, int ny,
                         const std::string& path)
{
  AUXEIG_REQUIRE(nx >= 2 && ny >= 2, ContractViolation, "sample grid needs at least 2x2 points");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Point2& p : mesh.vertices)
  {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const FieldEvaluator ev(mesh, dofW, eps.coefficients);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "x,y,value\n" << std::setprecision(17);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
    {
      const Point2 p{x0 + (x1 - x0) * i / (nx - 1), y0 + (y1 - y0) * j / (ny - 1)};
      if (auto s = ev.eval(p)) out << p.x << ',' << p.y << ',' << s->value << '\n';
    }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace auxeig

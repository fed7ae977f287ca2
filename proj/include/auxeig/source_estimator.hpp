#pragma once

#include "auxeig/assembly.hpp"
#include "auxeig/cholesky.hpp"
#include "auxeig/eigensolver.hpp"

#include <string>
#include <vector>

namespace auxeig
{

// Auxiliary-space error function for the source f_j = mu_j phi_j.
struct ErrorFunction
{
  Vec coefficients;  // on the W dof map
  double energy_norm = 0.0;
  double l2_norm = 0.0;
  int source = 0;  // 0-based pair index
};

// mu M_WV phi - K_WV phi.
Vec error_rhs(const FormSet& forms, double mu_hat, const Vec& phi_hat);

// One Cholesky factorisation of K_WW, reused for the first r pairs.
std::vector<ErrorFunction> solve_error_functions(const FormSet& forms, const EigenResult& pairs, int r);

// ||u_ref(f) - u_hat||_E, where u_ref solves K_ref u = M_ref f on the reference space and
// f, u_hat are given on a space embedded by `embed` (index of each coarse dof in the
// reference numbering, see hp_space `embedding`).
double reference_source_error(const SpaceForms& ref, const std::vector<int>& embed, const Vec& f, const Vec& u_hat);
// Same, with a factorisation of ref.K supplied by the caller.
double reference_source_error(const SparseCholesky& ref_chol, const SpaceForms& ref, const std::vector<int>& embed,
                              const Vec& f, const Vec& u_hat);

// Zero-padded copy of coarse coefficients in the reference numbering.
Vec embed_coefficients(const std::vector<int>& embed, int ref_size, const Vec& coarse);
Mat embed_coefficients(const std::vector<int>& embed, int ref_size, const Mat& coarse);

// CSV "x,y,value" of an error function on an nx x ny grid over the mesh bounding box;
// points outside the domain are skipped.
void write_error_samples(const Mesh& mesh, const DofMap& dofW, const ErrorFunction& eps, int nx, int ny,
                         const std::string& path);

}  // namespace auxeig

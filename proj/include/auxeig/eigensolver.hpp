#pragma once

#include "auxeig/assembly.hpp"

#include <cstdint>
#include <string>

namespace auxeig
{

struct SolverOptions
{
  double tol = 1e-10;
  int max_iterations = 500;
  int block_size = 0;  // 0: r + 5
  int dense_threshold = 2000;
  double shift = 0.0;
  std::uint64_t seed = 20240611;
};

struct EigenResult
{
  Vec values;       // ascending
  Mat vectors;      // M-orthonormal columns
  Vec residuals;    // ||K x - lambda M x|| / ||K x||
  int iterations = 0;
  bool dense = false;
};

// Smallest r eigenpairs of K x = lambda M x.
EigenResult solve_generalized_symmetric(const SparseSymMatrix& K, const SparseSymMatrix& M, int r,
                                        const SolverOptions& opts = {});

// Relative residuals recomputed from scratch.
Vec check_residuals(const SparseSymMatrix& K, const SparseSymMatrix& M, const EigenResult& result);

// Flips each column so that its largest-magnitude entry is positive.
void normalize_signs(Mat& vectors);

}  // namespace auxeig

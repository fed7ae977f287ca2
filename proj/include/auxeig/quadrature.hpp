#pragma once

#include "auxeig/mesh.hpp"

#include <array>
#include <vector>

namespace auxeig
{

struct QuadratureRule
{
  std::vector<std::array<double, 2>> points;  // reference coordinates
  std::vector<double> weights;
  int degree = 0;
};

// n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

constexpr int max_quadrature_degree = 120;

// Rule on the reference triangle (total degree d) or square (degree d per variable).
// Rules are cached; the reference stays valid for the lifetime of the process.
const QuadratureRule& quadrature_for(ElementKind kind, int d);

}  // namespace auxeig

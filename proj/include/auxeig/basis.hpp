#pragma once

#include "auxeig/mesh.hpp"

#include <array>

namespace auxeig
{

// Lobatto shape function l_k on [-1,1], k >= 0 (l_0, l_1 are the linear hats).
double lobatto(int k, double x);
double lobatto_derivative(int k, double x);
double legendre(int n, double x);

enum class ShapeRole
{
  Vertex,
  Edge,
  Interior
};

// Identifies one hierarchical shape function on a reference element.
//   Vertex:   index = local vertex.
//   Edge:     index = local edge, degree >= 2 (oriented from local vertex index to index+1).
//   Interior: quadrilateral -> (i, j) with i, j >= 2, degree max(i, j);
//             triangle      -> (i, j) = (n1, n2) >= 0, degree n1 + n2 + 3.
struct ShapeId
{
  ShapeRole role = ShapeRole::Vertex;
  int index = 0;
  int degree = 1;
  int i = 0;
  int j = 0;
};

struct ShapeValue
{
  double value = 0.0;
  std::array<double, 2> grad{};  // reference gradient (d/dxi, d/deta)
};

// Throws ContractViolation when the id is inconsistent with the element kind.
ShapeValue shape_eval(ElementKind kind, const ShapeId& id, double xi, double eta);

ShapeId vertex_shape(int v);
ShapeId edge_shape(int k, int degree);
ShapeId quad_interior_shape(int i, int j);
ShapeId triangle_interior_shape(int n1, int n2);

}  // namespace auxeig

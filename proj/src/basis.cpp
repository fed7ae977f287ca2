#include "auxeig/basis.hpp"

#include "auxeig/errors.hpp"

#include <algorithm>
#include <cmath>

namespace auxeig
{

namespace
{

// Value with first derivatives in (xi, eta).
struct Dual
{
  double v = 0, dx = 0, dy = 0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy}; }
Dual operator*(double s, Dual a) { return {s * a.v, s * a.dx, s * a.dy}; }
Dual constant(double c) { return {c, 0, 0}; }

// t^n P_n(x/t)
Dual scaled_legendre(int n, Dual x, Dual t)
{
  if (n == 0) return constant(1.0);
  Dual pm = constant(1.0), p = x;
  const Dual t2 = t * t;
  for (int k = 2; k <= n; ++k)
  {
    Dual pn = (1.0 / k) * ((2.0 * k - 1.0) * (x * p) - (k - 1.0) * (t2 * pm));
    pm = p;
    p = pn;
  }
  return p;
}

// t^k l_k(x/t), k >= 2
Dual scaled_lobatto(int k, Dual x, Dual t)
{
  const Dual a = scaled_legendre(k, x, t);
  const Dual b = scaled_legendre(k - 2, x, t);
  return (1.0 / std::sqrt(2.0 * (2 * k - 1))) * (a - (t * t) * b);
}

Dual jacobi(int n, double alpha, double beta, Dual x)
{
  if (n == 0) return constant(1.0);
  Dual pm = constant(1.0);
  Dual p = constant(alpha + 1.0) + (0.5 * (alpha + beta + 2.0)) * (x - constant(1.0));
  for (int k = 2; k <= n; ++k)
  {
    const double s = 2.0 * k + alpha + beta;
    const double a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 1.0) * s * (s - 2.0);
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    Dual pn = (1.0 / a1) * ((constant(a2) + a3 * x) * p - a4 * pm);
    pm = p;
    p = pn;
  }
  return p;
}

ShapeValue to_value(Dual d) { return {d.v, {d.dx, d.dy}}; }

ShapeValue quad_shape(const ShapeId& id, double xi, double eta)
{
  const double x = 2 * xi - 1, y = 2 * eta - 1;
  // l_k(s * u) and its derivative in u, u in {x, y}.
  auto L = [](int k, double s, double u) {
    return std::pair<double, double>{lobatto(k, s * u), s * lobatto_derivative(k, s * u)};
  };
  auto prod = [](std::pair<double, double> fx, std::pair<double, double> gy) {
    // f(x) g(y), chain rule dx/dxi = dy/deta = 2.
    return ShapeValue{fx.first * gy.first, {2 * fx.second * gy.first, 2 * fx.first * gy.second}};
  };
  switch (id.role)
  {
  case ShapeRole::Vertex: {
    static const int ix[4] = {0, 1, 1, 0}, iy[4] = {0, 0, 1, 1};
    AUXEIG_REQUIRE(id.index >= 0 && id.index < 4, ContractViolation, "quad vertex index out of range");
    return prod(L(ix[id.index], 1, x), L(iy[id.index], 1, y));
  }
  case ShapeRole::Edge: {
    AUXEIG_REQUIRE(id.degree >= 2, ContractViolation, "edge function degree must be >= 2");
    const int k = id.degree;
    switch (id.index)
    {
    case 0: return prod(L(k, 1, x), L(0, 1, y));
    case 1: return prod(L(1, 1, x), L(k, 1, y));
    case 2: return prod(L(k, -1, x), L(1, 1, y));
    case 3: return prod(L(0, 1, x), L(k, -1, y));
    default: throw ContractViolation("quad edge index out of range");
    }
  }
  case ShapeRole::Interior:
    AUXEIG_REQUIRE(id.i >= 2 && id.j >= 2, ContractViolation, "quad interior indices must be >= 2");
    return prod(L(id.i, 1, x), L(id.j, 1, y));
  }
  throw ContractViolation("unknown shape role");
}

ShapeValue triangle_shape(const ShapeId& id, double xi, double eta)
{
  const std::array<Dual, 3> lam{Dual{1 - xi - eta, -1, -1}, Dual{xi, 1, 0}, Dual{eta, 0, 1}};
  switch (id.role)
  {
  case ShapeRole::Vertex:
    AUXEIG_REQUIRE(id.index >= 0 && id.index < 3, ContractViolation, "triangle vertex index out of range");
    return to_value(lam[id.index]);
  case ShapeRole::Edge: {
    AUXEIG_REQUIRE(id.index >= 0 && id.index < 3, ContractViolation, "triangle edge index out of range");
    AUXEIG_REQUIRE(id.degree >= 2, ContractViolation, "edge function degree must be >= 2");
    const Dual& a = lam[id.index];
    const Dual& b = lam[(id.index + 1) % 3];
    return to_value(scaled_lobatto(id.degree, b - a, a + b));
  }
  case ShapeRole::Interior: {
    AUXEIG_REQUIRE(id.i >= 0 && id.j >= 0, ContractViolation, "triangle interior indices must be >= 0");
    const int i = id.i + 2;
    const Dual u = scaled_lobatto(i, lam[1] - lam[0], lam[0] + lam[1]);
    const Dual v = lam[2] * jacobi(id.j, 2.0 * i - 1.0, 0.0, 2.0 * lam[2] - constant(1.0));
    return to_value(u * v);
  }
  }
  throw ContractViolation("unknown shape role");
}

}  // namespace

double legendre(int n, double x)
{
  if (n == 0) return 1.0;
  double pm = 1.0, p = x;
  for (int k = 2; k <= n; ++k)
  {
    const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm) / k;
    pm = p;
    p = pn;
  }
  return p;
}

double lobatto(int k, double x)
{
  if (k == 0) return 0.5 * (1 - x);
  if (k == 1) return 0.5 * (1 + x);
  return (legendre(k, x) - legendre(k - 2, x)) / std::sqrt(2.0 * (2 * k - 1));
}

double lobatto_derivative(int k, double x)
{
  if (k == 0) return -0.5;
  if (k == 1) return 0.5;
  return std::sqrt((2 * k - 1) / 2.0) * legendre(k - 1, x);
}

ShapeValue shape_eval(ElementKind kind, const ShapeId& id, double xi, double eta)
{
  return kind == ElementKind::Quadrilateral ? quad_shape(id, xi, eta) : triangle_shape(id, xi, eta);
}

ShapeId vertex_shape(int v) { return {ShapeRole::Vertex, v, 1, 0, 0}; }
ShapeId edge_shape(int k, int degree) { return {ShapeRole::Edge, k, degree, 0, 0}; }
ShapeId quad_interior_shape(int i, int j) { return {ShapeRole::Interior, 0, std::max(i, j), i, j}; }
ShapeId triangle_interior_shape(int n1, int n2) { return {ShapeRole::Interior, 0, n1 + n2 + 3, n1, n2}; }

}  // namespace auxeig

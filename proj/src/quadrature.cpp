#include "auxeig/quadrature.hpp"

#include "auxeig/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace auxeig
{

namespace
{

// (P_n(z), P_n'(z))
std::pair<double, double> legendre_with_derivative(int n, double z)
{
  double p0 = 1.0, p1 = z;
  for (int k = 2; k <= n; ++k)
  {
    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w)
{
  AUXEIG_REQUIRE(n >= 1, ConfigurationError, "Gauss rule needs at least one point");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double h = 0.5 * (b - a);
  if (n == 1)
  {
    x[0] = a + h;
    w[0] = 2.0 * h;
    return;
  }
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it)
    {
      const auto [p, dp] = legendre_with_derivative(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, z).second;
    const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = a + h * (1.0 - z);
    x[n - 1 - i] = a + h * (1.0 + z);
    w[i] = w[n - 1 - i] = h * wt;
  }
}

namespace
{

QuadratureRule make_rule(ElementKind kind, int d)
{
  QuadratureRule r;
  r.degree = d;
  std::vector<double> xu, wu, xv, wv;
  if (kind == ElementKind::Quadrilateral)
  {
    const int n = (d + 2) / 2;
    gauss_legendre(n, 0.0, 1.0, xu, wu);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        r.points.push_back({xu[i], xu[j]});
        r.weights.push_back(wu[i] * wu[j]);
      }
  }
  else
  {
    // Collapsed square: xi = u (1 - v), eta = v, Jacobian (1 - v).
    const int nu = (d + 2) / 2;
    const int nv = (d + 3) / 2;
    gauss_legendre(nu, 0.0, 1.0, xu, wu);
    gauss_legendre(nv, 0.0, 1.0, xv, wv);
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < nu; ++i)
      {
        r.points.push_back({xu[i] * (1.0 - xv[j]), xv[j]});
        r.weights.push_back(wu[i] * wv[j] * (1.0 - xv[j]));
      }
  }
  return r;
}

}  // namespace

const QuadratureRule& quadrature_for(ElementKind kind, int d)
{
  AUXEIG_REQUIRE(d >= 0, ConfigurationError, "quadrature degree must be nonnegative");
  if (d > max_quadrature_degree)
    throw ConfigurationError("quadrature degree " + std::to_string(d) + " exceeds supported maximum " +
                             std::to_string(max_quadrature_degree));
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{static_cast<int>(kind), d}];
  if (!slot) slot = std::make_unique<QuadratureRule>(make_rule(kind, d));
  return *slot;
}

}  // namespace auxeig

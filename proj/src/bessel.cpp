#include "auxeig/benchmarks.hpp"
#include "auxeig/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace auxeig
{

double bessel_j(double order, double x)
{
  if (!(x > 0)) throw DomainError("bessel_j requires x > 0");
  return boost::math::cyl_bessel_j(order, x);
}

double bessel_j_derivative(double order, double x)
{
  if (!(x > 0)) throw DomainError("bessel_j_derivative requires x > 0");
  if (order == 0.0) return -boost::math::cyl_bessel_j(1.0, x);
  return 0.5 * (boost::math::cyl_bessel_j(order - 1, x) - boost::math::cyl_bessel_j(order + 1, x));
}

namespace
{

double mcmahon(double nu, int m)
{
  const double beta = (m + 0.5 * nu - 0.25) * std::numbers::pi;
  const double mu = 4 * nu * nu;
  const double e = 8 * beta;
  return beta - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e * e * e);
}

double refine_root(double nu, double a, double b, double guess)
{
  double fa = bessel_j(nu, a);
  double x = (guess > a && guess < b) ? guess : 0.5 * (a + b);
  for (int it = 0; it < 200; ++it)
  {
    const double f = bessel_j(nu, x);
    if (f == 0.0) return x;
    if ((f > 0) == (fa > 0))
    {
      a = x;
      fa = f;
    }
    else
      b = x;
    double xn = x - f / bessel_j_derivative(nu, x);
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    if (std::abs(xn - x) <= 4e-16 * x || b - a <= 4e-16 * x) return xn;
    x = xn;
  }
  return x;
}

}  // namespace

std::vector<double> bessel_roots(double order, int count)
{
  AUXEIG_REQUIRE(count >= 1, ContractViolation, "bessel_roots needs count >= 1");
  AUXEIG_REQUIRE(order >= 0, ContractViolation, "bessel_roots needs order >= 0");
  std::vector<double> roots;
  roots.reserve(count);
  const double h = 0.1;
  double a = std::max(order, 1e-2);
  double fa = bessel_j(order, a);
  int m = 1;
  while (static_cast<int>(roots.size()) < count)
  {
    const double b = a + h;
    const double fb = bessel_j(order, b);
    if (fb == 0.0 || (fa > 0) != (fb > 0))
    {
      const double x = fb == 0.0 ? b : refine_root(order, a, b, mcmahon(order, m));
      const double res = std::abs(bessel_j(order, x));
      if (!(res <= 1e-11) || !(x >= a && x <= b))
      {
        std::ostringstream os;
        os << "Bessel root bracket failure: order " << order << ", root " << m << " in [" << a << ", " << b
           << "], residual " << res;
        throw NumericalError(os.str());
      }
      roots.push_back(x);
      ++m;
      a = fb == 0.0 ? b + 1e-9 : b;
      fa = bessel_j(order, a);
      continue;
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace auxeig

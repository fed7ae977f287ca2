#include "auxeig/benchmarks.hpp"

#include "auxeig/errors.hpp"
#include "auxeig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

namespace auxeig
{

namespace
{

constexpr double pi = std::numbers::pi;

// Coefficients c_k of sin(k theta/2), k = 1..K, on the circle of radius r. The midpoint
// rule on (0, 2 pi) is exact for these products, so this is a DFT on the doubled interval.
std::vector<double> angular_coefficients(const std::function<double(Point2)>& f, double r, int K, int N)
{
  std::vector<double> c(K + 1, 0.0);
  for (int i = 0; i < N; ++i)
  {
    const double th = 2 * pi * (i + 0.5) / N;
    const double v = f({r * std::cos(th), r * std::sin(th)});
    for (int k = 1; k <= K; ++k) c[k] += v * std::sin(0.5 * k * th);
  }
  for (double& x : c) x *= 2.0 / N;
  return c;
}

// Index of the largest entry of e[1..] and the ratio largest / runner-up (in amplitude).
std::pair<int, double> dominant(const std::vector<double>& e)
{
  int best = 1;
  for (int k = 2; k < static_cast<int>(e.size()); ++k)
    if (e[k] > e[best]) best = k;
  double second = 0.0;
  for (int k = 1; k < static_cast<int>(e.size()); ++k)
    if (k != best) second = std::max(second, e[k]);
  const double ratio = second > 0 ? std::sqrt(e[best] / second) : INFINITY;
  return {best, ratio};
}

}  // namespace

std::pair<int, int> detect_mode(const std::function<double(Point2)>& field, const ModeDetectionOptions& opts)
{
  AUXEIG_REQUIRE(opts.max_m >= 1 && opts.max_n >= 1, ContractViolation, "detect_mode needs a non-empty window");
  AUXEIG_REQUIRE(opts.angular_samples > opts.max_n, ContractViolation, "too few angular samples");
  const int K = opts.max_n;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> radius(0.25, 0.95);
  std::vector<double> energy(K + 1, 0.0);
  auto accumulate = [&](double r) {
    const auto c = angular_coefficients(field, r, K, opts.angular_samples);
    for (int k = 1; k <= K; ++k) energy[k] += c[k] * c[k];
  };
  accumulate(radius(rng));
  accumulate(radius(rng));
  auto [n, ratio] = dominant(energy);
  if (ratio < opts.dominance)
  {
    accumulate(radius(rng));
    std::tie(n, ratio) = dominant(energy);
  }
  if (!(energy[n] > 1e-24)) throw NumericalError("mode detection failed: no dominant angular frequency");

  // Radial profile g(r) = (1/pi) int f(r, theta) sin(n theta/2) dtheta on Gauss points.
  std::vector<double> rq, wq;
  gauss_legendre(opts.radial_points, 0.0, 1.0, rq, wq);
  std::vector<double> g(rq.size());
  for (std::size_t i = 0; i < rq.size(); ++i)
  {
    double s = 0.0;
    const int N = opts.angular_samples;
    for (int j = 0; j < N; ++j)
    {
      const double th = 2 * pi * (j + 0.5) / N;
      s += field({rq[i] * std::cos(th), rq[i] * std::sin(th)}) * std::sin(0.5 * n * th);
    }
    g[i] = 2.0 * s / N;
  }

  const double nu = 0.5 * n;
  const auto roots = bessel_roots(nu, opts.max_m);
  int m = 1;
  double best = -1.0;
  for (int mu = 1; mu <= opts.max_m; ++mu)
  {
    double ip = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < rq.size(); ++i)
    {
      const double phi = bessel_j(nu, roots[mu - 1] * rq[i]);
      ip += wq[i] * rq[i] * g[i] * phi;
      nrm += wq[i] * rq[i] * phi * phi;
    }
    const double score = std::abs(ip) / std::sqrt(nrm);
    if (score > best)
    {
      best = score;
      m = mu;
    }
  }
  return {m, n};
}

}  // namespace auxeig

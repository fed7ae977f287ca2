#include "auxeig/benchmarks.hpp"

#include "auxeig/errors.hpp"
#include "auxeig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace auxeig
{

namespace
{
constexpr double pi = std::numbers::pi;
}

AnalyticMode analytic_mode(int m, int n)
{
  AUXEIG_REQUIRE(m >= 1 && n >= 1, ContractViolation, "mode indices must be >= 1");
  AnalyticMode md;
  md.m = m;
  md.n = n;
  md.root = bessel_roots(0.5 * n, m).back();
  md.lambda = md.root * md.root;
  return md;
}

std::vector<AnalyticMode> slit_disk_spectrum(int count)
{
  AUXEIG_REQUIRE(count >= 1, ContractViolation, "slit_disk_spectrum needs count >= 1");
  if (count > 100) throw CapabilityError("slit-disk spectrum is only available for N <= 100 (simplicity unverified beyond)");

  // All modes below `cutoff` are collected; the cutoff doubles until it covers N modes.
  for (double cutoff = 256.0;; cutoff *= 2)
  {
    const double rc = std::sqrt(cutoff);
    std::vector<AnalyticMode> modes;
    for (int n = 1;; ++n)
    {
      const double nu = 0.5 * n;
      if (nu >= rc) break;  // j_{1,nu} > nu
      int want = 4;
      std::vector<double> roots;
      for (;;)
      {
        roots = bessel_roots(nu, want);
        if (roots.back() >= rc) break;
        want *= 2;
      }
      if (roots.front() >= rc) break;
      for (int m = 1; m <= want && roots[m - 1] < rc; ++m)
        modes.push_back({0, m, n, roots[m - 1], roots[m - 1] * roots[m - 1]});
    }
    if (static_cast<int>(modes.size()) < count + 1) continue;
    std::sort(modes.begin(), modes.end(), [](const AnalyticMode& a, const AnalyticMode& b) { return a.lambda < b.lambda; });
    modes.resize(count);
    for (int k = 0; k < count; ++k) modes[k].k = k + 1;
    return modes;
  }
}

ModeSample eval_mode(const AnalyticMode& mode, Point2 p)
{
  const double r = std::hypot(p.x, p.y);
  ModeSample s;
  if (r == 0.0) return s;
  double th = std::atan2(p.y, p.x);
  if (th < 0) th += 2 * pi;
  const double nu = 0.5 * mode.n;
  const double z = mode.root * r;
  const double J = bessel_j(nu, z);
  const double dJ = bessel_j_derivative(nu, z);
  const double S = std::sin(nu * th), C = std::cos(nu * th);
  s.value = J * S;
  const double dr = mode.root * dJ * S;
  const double dt = J * nu * C / r;
  const double c = p.x / r, sn = p.y / r;
  s.grad = {dr * c - dt * sn, dr * sn + dt * c};
  return s;
}

double mode_norm_squared(const AnalyticMode& mode)
{
  std::vector<double> x, w;
  gauss_legendre(30, 0.0, 1.0, x, w);
  const int pieces = 4 * mode.m + 8;
  const double nu = 0.5 * mode.n;
  double sum = 0.0;
  for (int s = 0; s < pieces; ++s)
    for (std::size_t q = 0; q < x.size(); ++q)
    {
      const double r = (s + x[q]) / pieces;
      const double J = bessel_j(nu, mode.root * r);
      sum += w[q] / pieces * J * J * r;
    }
  return pi * sum;  // angular factor: integral of sin^2(n theta/2) over (0, 2 pi)
}

ExactErrors exact_error_norms(const FieldEvaluator& psi_hat, const AnalyticMode& mode, int extra_degree)
{
  const Mesh& mesh = psi_hat.mesh();
  const int maxdeg = psi_hat.dofs().max_degree;

  struct Point
  {
    double w;
    ModeSample exact;
    FieldEvaluator::Sample fe;
  };
  std::vector<Point> pts;
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    const ElementKind kind = mesh.elements[el].kind;
    const int d = std::min(max_quadrature_degree, element_quadrature_degree(mesh, el, maxdeg, {}) + extra_degree);
    const QuadratureRule& rule = quadrature_for(kind, d);
    for (std::size_t q = 0; q < rule.weights.size(); ++q)
    {
      const auto [xi, eta] = rule.points[q];
      const MapJet jet = map_element_point(mesh, el, xi, eta);
      pts.push_back({rule.weights[q] * std::abs(jet.det()), eval_mode(mode, jet.x), psi_hat.eval_reference(el, xi, eta)});
    }
  }

  const double nn = mode_norm_squared(mode);
  double nh = 0.0, a = 0.0;
  for (const Point& p : pts)
  {
    nh += p.w * p.fe.value * p.fe.value;
    a += p.w * p.fe.value * p.exact.value;
  }
  AUXEIG_REQUIRE(nh > 0, ContractViolation, "exact_error_norms: approximate field is zero");
  const double s = a < 0 ? -1.0 : 1.0;
  const double ce = 1.0 / std::sqrt(nn), ch = s / std::sqrt(nh);

  ExactErrors out;
  out.alpha = std::abs(a) * ce / std::sqrt(nh);
  double l2 = 0.0, en = 0.0;
  for (const Point& p : pts)
  {
    const double dv = ce * p.exact.value - ch * p.fe.value;
    const double gx = ce * p.exact.grad[0] - ch * p.fe.grad[0];
    const double gy = ce * p.exact.grad[1] - ch * p.fe.grad[1];
    l2 += p.w * dv * dv;
    en += p.w * (gx * gx + gy * gy);
  }
  out.l2_error = std::sqrt(l2);
  out.energy_error = std::sqrt(en);
  return out;
}

std::vector<ReferenceTable> reference_tables()
{
  return {
      {"isospectral",
       {4.50351270364, 13.5208410401, 19.8639263212, 30.4933490983, 35.1893179474, 46.3221446587, 51.3074786442,
        62.4572729970, 67.4067396593, 78.7626319950, 83.4387148427, 91.1669451784, 104.631385585, 109.930498884,
        111.846648035}},
      {"bridge_dirichlet_case2",
       {4.50348976806, 4.50348977820, 13.5207888798, 13.5207889083, 19.8636968115, 19.8636969659, 30.4931397957,
        30.4931399453, 35.1878233714, 35.1878245124, 46.3208464060, 46.3208474584}},
      {"bridge_neumann_case9",
       {4.50318419853, 4.50836662912, 13.4263953994, 13.5657193361, 19.5509676421, 19.8768798947, 30.2012278561,
        30.5972353211, 35.0596433246, 35.2057946583, 45.7623966583, 46.4364126764}},
  };
}

const ReferenceTable& reference_table(const std::string& label)
{
  static const std::vector<ReferenceTable> tables = reference_tables();
  for (const auto& t : tables)
    if (t.label == label) return t;
  throw ConfigurationError("unknown reference table '" + label + "'");
}

ReferenceTable read_reference_table(const std::string& path, const std::string& label)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference table " + path);
  ReferenceTable t{label, {}};
  std::string line;
  while (std::getline(in, line))
  {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int idx = 0;
    double v = 0.0;
    if (!(ls >> idx >> v)) throw IoError("malformed line in " + path + ": " + line);
    if (idx != static_cast<int>(t.values.size()) + 1) throw IoError("non-contiguous index in " + path);
    t.values.push_back(v);
  }
  return t;
}

}  // namespace auxeig

#pragma once

#include "auxeig/assembly.hpp"
#include "auxeig/mesh.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace auxeig
{

// J_nu(x) for x > 0; throws DomainError otherwise.
double bessel_j(double order, double x);
double bessel_j_derivative(double order, double x);

// First `count` positive roots of J_order, ascending.
std::vector<double> bessel_roots(double order, int count);

// Slit-disk Dirichlet mode J_{n/2}(j_{m,n} r) sin(n theta / 2), theta in (0, 2 pi).
struct AnalyticMode
{
  int k = 0;  // absolute index in the sorted spectrum (1-based), 0 if unassigned
  int m = 1;
  int n = 1;
  double root = 0.0;
  double lambda = 0.0;
};

AnalyticMode analytic_mode(int m, int n);

// Lowest N modes of the slit disk, N <= 100 (CapabilityError beyond).
std::vector<AnalyticMode> slit_disk_spectrum(int count);

struct ModeSample
{
  double value = 0.0;
  std::array<double, 2> grad{};
};

// Unnormalised mode value and gradient at p (p inside the unit disk).
ModeSample eval_mode(const AnalyticMode& mode, Point2 p);

// Squared L2 norm of the unnormalised mode, by radial Gauss quadrature.
double mode_norm_squared(const AnalyticMode& mode);

struct ExactErrors
{
  double l2_error = 0.0;
  double energy_error = 0.0;
  double alpha = 0.0;  // (psi, psi_hat) after normalisation to unit L2 norm, >= 0
};

// Errors of psi_hat against the exact mode after normalising both to unit L2 norm.
ExactErrors exact_error_norms(const FieldEvaluator& psi_hat, const AnalyticMode& mode, int extra_degree = 8);

struct ModeDetectionOptions
{
  int max_m = 6;
  int max_n = 25;
  int angular_samples = 512;
  int radial_points = 200;
  double dominance = 1.5;
  std::uint64_t seed = 20240611;
};

// (m, n) of a field on the slit disk: angular index from the dominant sin(k theta/2)
// coefficient on random circles, radial index by projection on the Bessel profiles.
std::pair<int, int> detect_mode(const std::function<double(Point2)>& field, const ModeDetectionOptions& opts = {});

struct ReferenceTable
{
  std::string label;
  std::vector<double> values;  // values[i] is eigenvalue i+1
};

// "isospectral", "bridge_dirichlet_case2", "bridge_neumann_case9".
std::vector<ReferenceTable> reference_tables();
const ReferenceTable& reference_table(const std::string& label);

// Parses the data file format of data/reference_tables.
ReferenceTable read_reference_table(const std::string& path, const std::string& label);

}  // namespace auxeig

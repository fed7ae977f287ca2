#include "auxeig/bridge_config.hpp"
#include "auxeig/errors.hpp"
#include "auxeig/mesh.hpp"

#include <cmath>
#include <numbers>

namespace auxeig
{

namespace
{

constexpr double pi = std::numbers::pi;

BoundaryTag dtag(std::string label) { return {BoundaryCondition::Dirichlet, std::move(label)}; }

using Q4 = std::array<int, 4>;
using T3 = std::array<int, 3>;

Mesh unit_square(int n) { return rectangle_mesh(n, n); }

Mesh slit_disk()
{
  MeshBuilder b;
  const int O = b.add_vertex({0, 0});
  std::array<int, 9> in{}, out{};
  for (int k = 0; k <= 8; ++k)
  {
    const double th = k * pi / 4;
    in[k] = b.add_vertex({0.5 * std::cos(th), 0.5 * std::sin(th)});
    out[k] = b.add_vertex({std::cos(th), std::sin(th)});
  }
  // k = 8 duplicates k = 0 geometrically so the slit has two independent sides.
  b.set_boundary(O, in[0], dtag("slit_upper"));
  b.set_boundary(in[0], out[0], dtag("slit_upper"));
  b.set_boundary(O, in[8], dtag("slit_lower"));
  b.set_boundary(in[8], out[8], dtag("slit_lower"));
  for (int k = 0; k < 8; ++k)
  {
    b.add_element(ElementKind::Triangle, T3{O, in[k], in[k + 1]});
    b.add_element(ElementKind::Quadrilateral, Q4{in[k], out[k], out[k + 1], in[k + 1]});
    b.set_arc(out[k], out[k + 1], {0, 0}, 1.0, k * pi / 4, (k + 1) * pi / 4);
    b.set_boundary(out[k], out[k + 1], dtag("outer"));
  }
  Mesh m = b.finalize();
  m.singular_points = detect_singular_points(m);
  return m;
}

// Rigid placement of a unit half-disk: identity, or the half-turn used for the
// second drum of the bridge domain.
struct Placement
{
  bool rotated = false;
  double cx = 0.0;
  Point2 apply(Point2 p) const { return rotated ? Point2{cx - p.x, 0.1 - p.y} : p; }
  Point2 center() const { return apply({0, 0}); }
  double angle(double th) const { return rotated ? th + pi : th; }
};

struct HalfDiskLabels
{
  std::string right_straight, arc1, arc2, arc3, left_straight;
};

struct HalfDiskIds
{
  int O = -1, B1 = -1, C1 = -1, M1 = -1, Q1 = -1;
};

// Coarse half-disk mesh (y > 0 in local coordinates). With `notch`, the arc near
// angle 0 is split at asin(0.1)/2 and asin(0.1), leaving the arc [0, asin(0.1)]
// as an interior interface for the bridge.
HalfDiskIds add_half_disk(MeshBuilder& b, const Placement& P, const HalfDiskLabels& lab,
                          const std::map<std::string, BoundaryCondition>& bc, bool notch)
{
  auto V = [&](Point2 p) { return b.add_vertex(P.apply(p)); };
  auto polar = [&](double r, double th) { return V({r * std::cos(th), r * std::sin(th)}); };
  auto tag = [&](int a, int c, const std::string& l) { b.set_boundary(a, c, {bc.at(l), l}); };
  auto arc = [&](int a, int c, double ta, double tc) {
    b.set_arc(a, c, P.center(), 1.0, P.angle(ta), P.angle(tc));
  };

  HalfDiskIds ids;
  ids.O = V({0, 0});
  ids.B1 = V({0.5, 0});
  ids.C1 = V({1, 0});
  const int E1 = polar(1, pi / 8), A1 = polar(1, pi / 4), F1 = polar(1, 3 * pi / 8), N = polar(1, pi / 2);
  const int F2 = polar(1, 5 * pi / 8), A3 = polar(1, 3 * pi / 4), E2 = polar(1, 7 * pi / 8);
  const int C2 = V({-1, 0}), B2 = V({-0.5, 0});
  const int I1 = polar(0.5, pi / 4), I2 = polar(0.5, pi / 2), I3 = polar(0.5, 3 * pi / 4);

  b.add_element(ElementKind::Quadrilateral, Q4{ids.O, ids.B1, I1, I2});
  b.add_element(ElementKind::Quadrilateral, Q4{ids.O, I2, I3, B2});
  b.add_element(ElementKind::Quadrilateral, Q4{I1, F1, N, I2});
  b.add_element(ElementKind::Quadrilateral, Q4{I2, N, F2, I3});
  b.add_element(ElementKind::Quadrilateral, Q4{B2, I3, E2, C2});
  b.add_element(ElementKind::Triangle, T3{I1, E1, A1});
  b.add_element(ElementKind::Triangle, T3{I1, A1, F1});
  b.add_element(ElementKind::Triangle, T3{I3, F2, A3});
  b.add_element(ElementKind::Triangle, T3{I3, A3, E2});

  const double t = std::asin(0.1);
  if (notch)
  {
    ids.M1 = polar(1, t / 2);
    ids.Q1 = polar(1, t);
    const int Z = V({0.8, 0.15});
    b.add_element(ElementKind::Quadrilateral, Q4{ids.B1, ids.C1, ids.M1, Z});
    b.add_element(ElementKind::Triangle, T3{Z, ids.M1, ids.Q1});
    b.add_element(ElementKind::Quadrilateral, Q4{I1, Z, ids.Q1, E1});
    b.add_element(ElementKind::Triangle, T3{ids.B1, Z, I1});
    arc(ids.C1, ids.M1, 0, t / 2);
    arc(ids.M1, ids.Q1, t / 2, t);
    arc(ids.Q1, E1, t, pi / 8);
    tag(ids.Q1, E1, lab.arc1);
  }
  else
  {
    b.add_element(ElementKind::Quadrilateral, Q4{ids.B1, ids.C1, E1, I1});
    arc(ids.C1, E1, 0, pi / 8);
    tag(ids.C1, E1, lab.arc1);
  }
  arc(E1, A1, pi / 8, pi / 4);
  arc(A1, F1, pi / 4, 3 * pi / 8);
  arc(F1, N, 3 * pi / 8, pi / 2);
  arc(N, F2, pi / 2, 5 * pi / 8);
  arc(F2, A3, 5 * pi / 8, 3 * pi / 4);
  arc(A3, E2, 3 * pi / 4, 7 * pi / 8);
  arc(E2, C2, 7 * pi / 8, pi);
  tag(ids.O, ids.B1, lab.right_straight);
  tag(ids.B1, ids.C1, lab.right_straight);
  tag(E1, A1, lab.arc1);
  tag(A1, F1, lab.arc2);
  tag(F1, N, lab.arc2);
  tag(N, F2, lab.arc2);
  tag(F2, A3, lab.arc2);
  tag(A3, E2, lab.arc3);
  tag(E2, C2, lab.arc3);
  tag(C2, B2, lab.left_straight);
  tag(B2, ids.O, lab.left_straight);
  return ids;
}

Mesh half_disk(bool first)
{
  const auto D = BoundaryCondition::Dirichlet, N = BoundaryCondition::Neumann;
  std::map<std::string, BoundaryCondition> bc{
      {"gamma1", first ? D : N}, {"gamma2", first ? N : D}, {"gamma3", first ? D : N}, {"gamma4", first ? N : D}};
  MeshBuilder b;
  add_half_disk(b, Placement{}, {"gamma1", "gamma1", "gamma2", "gamma3", "gamma4"}, bc, false);
  Mesh m = b.finalize();
  m.singular_points = detect_singular_points(m);
  return m;
}

Mesh bridge(int bc_case, BoundaryCondition bridge_bc)
{
  const SegmentConditions bc = bridge_boundary_config(bc_case, bridge_bc);
  MeshBuilder b;
  const HalfDiskIds L = add_half_disk(b, Placement{false}, {"A", "I", "J", "K", "L"}, bc, true);
  // Bridge rectangle [ct, ct + 1/4] x [0, 1/10]; the second drum is its half-turn image.
  const double ct = std::cos(std::asin(0.1));
  const double cx = 2 * ct + 0.25;
  const HalfDiskIds R = add_half_disk(b, Placement{true, cx}, {"G", "C", "D", "E", "F"}, bc, true);

  const int Bm = b.add_vertex({(1 + cx - ct) / 2, 0.0});
  const int Tm = b.add_vertex({(ct + cx - 1) / 2, 0.1});
  const int Cc = b.add_vertex({cx / 2, 0.05});
  b.add_element(ElementKind::Quadrilateral, Q4{L.C1, Bm, Cc, L.M1});
  b.add_element(ElementKind::Quadrilateral, Q4{L.M1, Cc, Tm, L.Q1});
  b.add_element(ElementKind::Quadrilateral, Q4{Bm, R.Q1, R.M1, Cc});
  b.add_element(ElementKind::Quadrilateral, Q4{Cc, R.M1, R.C1, Tm});
  b.set_boundary(L.C1, Bm, {bc.at("B"), "B"});
  b.set_boundary(Bm, R.Q1, {bc.at("B"), "B"});
  b.set_boundary(R.C1, Tm, {bc.at("H"), "H"});
  b.set_boundary(Tm, L.Q1, {bc.at("H"), "H"});
  Mesh m = b.finalize();
  m.singular_points = detect_singular_points(m);
  return m;
}

}  // namespace

Mesh rectangle_mesh(int nx, int ny, double x0, double x1, double y0, double y1)
{
  AUXEIG_REQUIRE(nx >= 1 && ny >= 1, ConfigurationError, "rectangle mesh needs nx, ny >= 1");
  MeshBuilder b;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      b.add_vertex({x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      b.add_element(ElementKind::Quadrilateral, Q4{id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  for (int i = 0; i < nx; ++i)
  {
    b.set_boundary(id(i, 0), id(i + 1, 0), dtag("bottom"));
    b.set_boundary(id(i, ny), id(i + 1, ny), dtag("top"));
  }
  for (int j = 0; j < ny; ++j)
  {
    b.set_boundary(id(0, j), id(0, j + 1), dtag("left"));
    b.set_boundary(id(nx, j), id(nx, j + 1), dtag("right"));
  }
  return b.finalize();
}

Mesh build_domain_mesh(const DomainSpec& spec)
{
  AUXEIG_REQUIRE(spec.grading_layers >= 0, ConfigurationError, "grading_layers must be >= 0");
  AUXEIG_REQUIRE(spec.grading_factor > 0 && spec.grading_factor < 1, ConfigurationError,
                 "grading_factor must lie in (0,1)");
  const bool is_bridge = spec.domain == DomainType::Bridge;
  AUXEIG_REQUIRE(is_bridge == spec.bridge_bc.has_value(), ConfigurationError,
                 "bridge_bc must be given exactly for the bridge domain");
  AUXEIG_REQUIRE(is_bridge == (spec.bc_case != 0), ConfigurationError,
                 "bc_case must be given exactly for the bridge domain");

  Mesh coarse;
  switch (spec.domain)
  {
  case DomainType::UnitSquare:
    AUXEIG_REQUIRE(spec.square_divisions >= 1, ConfigurationError, "square_divisions must be >= 1");
    coarse = unit_square(spec.square_divisions);
    break;
  case DomainType::SlitDisk: coarse = slit_disk(); break;
  case DomainType::HalfDisk1: coarse = half_disk(true); break;
  case DomainType::HalfDisk2: coarse = half_disk(false); break;
  case DomainType::Bridge: coarse = bridge(spec.bc_case, *spec.bridge_bc); break;
  }
  return refine_toward_singular_points(coarse, spec.grading_layers, spec.grading_factor);
}

}  // namespace auxeig

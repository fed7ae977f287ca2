#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace auxeig
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
double distance(Point2 a, Point2 b);

// Circular arc c + R (cos t, sin t), t in [theta0, theta1].
struct ArcSpec
{
  Point2 center;
  double radius = 1.0;
  double theta0 = 0.0;
  double theta1 = 0.0;

  Point2 at(double theta) const;
};

enum class BoundaryCondition
{
  Dirichlet,
  Neumann
};

struct BoundaryTag
{
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  std::string label;  // segment label: "A".."L", "gamma1".."gamma4", "slit_upper", ...
};

// Global edge, always stored with v0 < v1. When curved, `arc_forward` tells
// whether v0 sits at arc->theta0 (true) or at arc->theta1.
struct Edge
{
  int v0 = -1;
  int v1 = -1;
  std::optional<BoundaryTag> boundary;
  std::optional<ArcSpec> arc;
  bool arc_forward = true;
};

enum class ElementKind
{
  Triangle,
  Quadrilateral
};

constexpr int vertex_count(ElementKind k) { return k == ElementKind::Triangle ? 3 : 4; }

// Local edge k joins local vertex k to local vertex (k+1) mod n.
struct Element
{
  ElementKind kind = ElementKind::Quadrilateral;
  std::array<int, 4> vertices{-1, -1, -1, -1};
  std::array<int, 4> edges{-1, -1, -1, -1};
  int layer = 0;

  int num_vertices() const { return vertex_count(kind); }
};

struct Mesh
{
  std::vector<Point2> vertices;
  std::vector<Edge> edges;
  std::vector<Element> elements;
  std::vector<int> singular_points;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }

  // Point on edge `e` at parameter s in [0,1] measured from edges[e].v0.
  Point2 edge_point(int e, double s) const;
  // d/ds of edge_point.
  Point2 edge_tangent(int e, double s) const;

  // Orientation of local edge k of element `el` relative to the global edge:
  // +1 when local vertex k is the global v0.
  int local_edge_orientation(int el, int k) const;
};

// Element geometry: reference -> physical map, defined here because both the
// refinement rules and the assembly need it. Reference triangle is
// (0,0),(1,0),(0,1); reference quadrilateral is [0,1]^2 with local vertices
// (0,0),(1,0),(1,1),(0,1).
struct MapJet
{
  Point2 x;
  // Jacobian d(x,y)/d(xi,eta), row-major: [dx/dxi dx/deta; dy/dxi dy/deta].
  std::array<double, 4> jac{};
  double det() const { return jac[0] * jac[3] - jac[1] * jac[2]; }
};

MapJet map_element_point(const Mesh& mesh, int el, double xi, double eta);
bool element_is_curved(const Mesh& mesh, int el);
double element_diameter(const Mesh& mesh, int el);

// Interior angle of element `el` at its local vertex k (tangent-based for arcs).
double element_corner_angle(const Mesh& mesh, int el, int k);

// ---------------------------------------------------------------------------
// Construction.

// Accumulates vertices, elements and edge attributes keyed by vertex pair;
// finalize() derives the global edge list.
class MeshBuilder
{
public:
  int add_vertex(Point2 p);
  int add_element(ElementKind kind, std::span<const int> verts, int layer = 0);
  // Arc attribute for the edge {a,b}; `a` sits at angle `theta_a`, `b` at `theta_b`.
  void set_arc(int a, int b, Point2 center, double radius, double theta_a, double theta_b);
  void set_boundary(int a, int b, BoundaryTag tag);

  // Geometry lookups valid before finalize().
  Point2 vertex(int v) const { return vertices_[v]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  std::optional<int> find_vertex(Point2 p, double tol) const;

  struct EdgeAttr
  {
    std::optional<BoundaryTag> boundary;
    std::optional<ArcSpec> arc;
    int arc_low_vertex = -1;  // vertex located at arc->theta0
  };

  Mesh finalize(std::vector<int> singular_points = {}) const;

  static MeshBuilder from_mesh(const Mesh& mesh);

  struct RawElement
  {
    ElementKind kind;
    std::array<int, 4> v;
    int layer;
  };
  const std::vector<RawElement>& raw_elements() const { return elements_; }
  const std::map<std::pair<int, int>, EdgeAttr>& edge_attrs() const { return attrs_; }

private:
  std::vector<Point2> vertices_;
  std::vector<RawElement> elements_;
  std::map<std::pair<int, int>, EdgeAttr> attrs_;
};

// ---------------------------------------------------------------------------
// Domains.

enum class DomainType
{
  UnitSquare,
  SlitDisk,
  HalfDisk1,
  HalfDisk2,
  Bridge
};

struct DomainSpec
{
  DomainType domain = DomainType::UnitSquare;
  int bc_case = 0;                                   // bridge only, 1..10
  std::optional<BoundaryCondition> bridge_bc;        // bridge only
  int grading_layers = 0;                            // L >= 0
  double grading_factor = 0.15;                      // q in (0,1)
  int square_divisions = 2;                          // unit square only
};

Mesh build_domain_mesh(const DomainSpec& spec);

// Uniform nx x ny quadrilateral mesh of [x0,x1]x[y0,y1], all edges Dirichlet.
Mesh rectangle_mesh(int nx, int ny, double x0 = 0.0, double x1 = 1.0, double y0 = 0.0,
                    double y1 = 1.0);

// Reentrant boundary vertices and Dirichlet/Neumann switch points.
std::vector<int> detect_singular_points(const Mesh& mesh);

Mesh refine_toward_singular_points(const Mesh& mesh, int levels, double q);

// ---------------------------------------------------------------------------
// Validation.

enum class ViolationKind
{
  Conformity,
  Orientation,
  UntaggedBoundary,
  SingularDistance,
  ArcMismatch,
  Topology
};

struct MeshViolation
{
  ViolationKind kind;
  std::string message;
};

std::vector<MeshViolation> validate_mesh(const Mesh& mesh);

// Vertex-graph distance between every pair of singular points; returns the minimum
// (or a large value if fewer than two singular points).
int min_singular_distance(const Mesh& mesh);

// Plain-text export (format documented in docs/formats.md).
void write_mesh(const Mesh& mesh, const std::string& path);
std::string mesh_to_string(const Mesh& mesh);

std::string to_string(DomainType d);
DomainType domain_from_string(const std::string& s);
std::string to_string(BoundaryCondition bc);

}  // namespace auxeig

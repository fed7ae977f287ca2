#include "auxeig/mesh.hpp"

#include "auxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace auxeig
{

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2 ArcSpec::at(double theta) const
{
  return {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
}

namespace
{

double arc_angle(const Edge& e, double s)
{
  const ArcSpec& a = *e.arc;
  return e.arc_forward ? a.theta0 + s * (a.theta1 - a.theta0) : a.theta1 - s * (a.theta1 - a.theta0);
}

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

struct CurvePoint
{
  Point2 p;
  Point2 dp;
};

// Local edge k of element `el`, parametrised by t in [0,1] from local vertex k to k+1.
CurvePoint local_edge_curve(const Mesh& mesh, int el, int k, double t)
{
  const Element& E = mesh.elements[el];
  const int e = E.edges[k];
  const int o = mesh.local_edge_orientation(el, k);
  const double s = o > 0 ? t : 1.0 - t;
  Point2 dp = mesh.edge_tangent(e, s);
  if (o < 0) dp = -1.0 * dp;
  return {mesh.edge_point(e, s), dp};
}

}  // namespace

Point2 Mesh::edge_point(int e, double s) const
{
  const Edge& E = edges[e];
  if (E.arc) return E.arc->at(arc_angle(E, s));
  const Point2 a = vertices[E.v0];
  const Point2 b = vertices[E.v1];
  return a + s * (b - a);
}

Point2 Mesh::edge_tangent(int e, double s) const
{
  const Edge& E = edges[e];
  if (E.arc)
  {
    const ArcSpec& a = *E.arc;
    const double th = arc_angle(E, s);
    const double dth = (E.arc_forward ? 1.0 : -1.0) * (a.theta1 - a.theta0);
    return {-a.radius * std::sin(th) * dth, a.radius * std::cos(th) * dth};
  }
  return vertices[E.v1] - vertices[E.v0];
}

int Mesh::local_edge_orientation(int el, int k) const
{
  const Element& E = elements[el];
  return E.vertices[k] == edges[E.edges[k]].v0 ? 1 : -1;
}

bool element_is_curved(const Mesh& mesh, int el)
{
  const Element& E = mesh.elements[el];
  for (int k = 0; k < E.num_vertices(); ++k)
    if (mesh.edges[E.edges[k]].arc) return true;
  return false;
}

MapJet map_element_point(const Mesh& mesh, int el, double xi, double eta)
{
  const Element& E = mesh.elements[el];
  MapJet J;
  Point2 dxi{}, deta{};
  if (E.kind == ElementKind::Quadrilateral)
  {
    const Point2 v0 = mesh.vertices[E.vertices[0]], v1 = mesh.vertices[E.vertices[1]];
    const Point2 v2 = mesh.vertices[E.vertices[2]], v3 = mesh.vertices[E.vertices[3]];
    J.x = (1 - xi) * (1 - eta) * v0 + xi * (1 - eta) * v1 + xi * eta * v2 + (1 - xi) * eta * v3;
    dxi = (1 - eta) * (v1 - v0) + eta * (v2 - v3);
    deta = (1 - xi) * (v3 - v0) + xi * (v2 - v1);
    const std::array<Point2, 4> V{v0, v1, v2, v3};
    for (int k = 0; k < 4; ++k)
    {
      if (!mesh.edges[E.edges[k]].arc) continue;
      const Point2 a = V[k], b = V[(k + 1) % 4];
      auto dev = [&](double t) {
        CurvePoint c = local_edge_curve(mesh, el, k, t);
        return CurvePoint{c.p - ((1 - t) * a + t * b), c.dp - (b - a)};
      };
      switch (k)
      {
      case 0: {
        auto d = dev(xi);
        J.x = J.x + (1 - eta) * d.p;
        dxi = dxi + (1 - eta) * d.dp;
        deta = deta - d.p;
        break;
      }
      case 1: {
        auto d = dev(eta);
        J.x = J.x + xi * d.p;
        dxi = dxi + d.p;
        deta = deta + xi * d.dp;
        break;
      }
      case 2: {
        auto d = dev(1 - xi);
        J.x = J.x + eta * d.p;
        dxi = dxi - eta * d.dp;
        deta = deta + d.p;
        break;
      }
      default: {
        auto d = dev(1 - eta);
        J.x = J.x + (1 - xi) * d.p;
        dxi = dxi - d.p;
        deta = deta - (1 - xi) * d.dp;
        break;
      }
      }
    }
  }
  else
  {
    const std::array<Point2, 3> V{mesh.vertices[E.vertices[0]], mesh.vertices[E.vertices[1]],
                                  mesh.vertices[E.vertices[2]]};
    const std::array<double, 3> lam{1 - xi - eta, xi, eta};
    const std::array<Point2, 3> glam{Point2{-1, -1}, Point2{1, 0}, Point2{0, 1}};
    J.x = lam[0] * V[0] + lam[1] * V[1] + lam[2] * V[2];
    dxi = V[1] - V[0];
    deta = V[2] - V[0];
    for (int k = 0; k < 3; ++k)
    {
      if (!mesh.edges[E.edges[k]].arc) continue;
      const int ia = k, ib = (k + 1) % 3;
      const double s = lam[ia] + lam[ib];
      if (s < 1e-14) continue;
      const double t = lam[ib] / s;
      CurvePoint c = local_edge_curve(mesh, el, k, t);
      const Point2 d = c.p - ((1 - t) * V[ia] + t * V[ib]);
      const Point2 dd = c.dp - (V[ib] - V[ia]);
      J.x = J.x + s * d;
      const Point2 ca = d - t * dd;
      const Point2 cb = d + (1 - t) * dd;
      dxi = dxi + glam[ia].x * ca + glam[ib].x * cb;
      deta = deta + glam[ia].y * ca + glam[ib].y * cb;
    }
  }
  J.jac = {dxi.x, deta.x, dxi.y, deta.y};
  return J;
}

double element_diameter(const Mesh& mesh, int el)
{
  const Element& E = mesh.elements[el];
  std::vector<Point2> pts;
  constexpr int ns = 8;
  for (int k = 0; k < E.num_vertices(); ++k)
    for (int i = 0; i < ns; ++i) pts.push_back(local_edge_curve(mesh, el, k, double(i) / ns).p);
  double d = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
  return d;
}

double element_corner_angle(const Mesh& mesh, int el, int k)
{
  const int n = mesh.elements[el].num_vertices();
  const Point2 u = local_edge_curve(mesh, el, k, 0.0).dp;
  const Point2 w = -1.0 * local_edge_curve(mesh, el, (k + n - 1) % n, 1.0).dp;
  double a = std::atan2(cross(u, w), dot(u, w));
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

// ---------------------------------------------------------------------------

int MeshBuilder::add_vertex(Point2 p)
{
  AUXEIG_REQUIRE(std::isfinite(p.x) && std::isfinite(p.y), GeometryError, "non-finite vertex");
  vertices_.push_back(p);
  return static_cast<int>(vertices_.size()) - 1;
}

int MeshBuilder::add_element(ElementKind kind, std::span<const int> verts, int layer)
{
  AUXEIG_REQUIRE(static_cast<int>(verts.size()) == vertex_count(kind), GeometryError,
                 "vertex count does not match element kind");
  RawElement r{kind, {-1, -1, -1, -1}, layer};
  for (size_t i = 0; i < verts.size(); ++i)
  {
    AUXEIG_REQUIRE(verts[i] >= 0 && verts[i] < num_vertices(), GeometryError, "vertex id out of range");
    r.v[i] = verts[i];
  }
  elements_.push_back(r);
  return static_cast<int>(elements_.size()) - 1;
}

void MeshBuilder::set_arc(int a, int b, Point2 center, double radius, double theta_a, double theta_b)
{
  AUXEIG_REQUIRE(radius > 0 && theta_a != theta_b, GeometryError, "degenerate arc");
  EdgeAttr& at = attrs_[{std::min(a, b), std::max(a, b)}];
  if (theta_a < theta_b)
  {
    at.arc = ArcSpec{center, radius, theta_a, theta_b};
    at.arc_low_vertex = a;
  }
  else
  {
    at.arc = ArcSpec{center, radius, theta_b, theta_a};
    at.arc_low_vertex = b;
  }
}

void MeshBuilder::set_boundary(int a, int b, BoundaryTag tag)
{
  attrs_[{std::min(a, b), std::max(a, b)}].boundary = std::move(tag);
}

std::optional<int> MeshBuilder::find_vertex(Point2 p, double tol) const
{
  for (int i = 0; i < num_vertices(); ++i)
    if (distance(vertices_[i], p) <= tol) return i;
  return std::nullopt;
}

Mesh MeshBuilder::finalize(std::vector<int> singular_points) const
{
  Mesh m;
  m.vertices = vertices_;
  std::map<std::pair<int, int>, int> index;
  for (const RawElement& r : elements_)
  {
    Element E;
    E.kind = r.kind;
    E.vertices = r.v;
    E.layer = r.layer;
    const int n = E.num_vertices();
    for (int k = 0; k < n; ++k)
    {
      const int a = r.v[k], b = r.v[(k + 1) % n];
      AUXEIG_REQUIRE(a != b, GeometryError, "element with repeated vertex");
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = index.find(key);
      if (it == index.end())
      {
        Edge ed;
        ed.v0 = key.first;
        ed.v1 = key.second;
        if (auto at = attrs_.find(key); at != attrs_.end())
        {
          ed.boundary = at->second.boundary;
          ed.arc = at->second.arc;
          ed.arc_forward = at->second.arc_low_vertex == ed.v0;
        }
        it = index.emplace(key, m.num_edges()).first;
        m.edges.push_back(std::move(ed));
      }
      E.edges[k] = it->second;
    }
    m.elements.push_back(E);
  }
  std::sort(singular_points.begin(), singular_points.end());
  singular_points.erase(std::unique(singular_points.begin(), singular_points.end()), singular_points.end());
  m.singular_points = std::move(singular_points);
  return m;
}

MeshBuilder MeshBuilder::from_mesh(const Mesh& mesh)
{
  MeshBuilder b;
  b.vertices_ = mesh.vertices;
  for (const Element& E : mesh.elements) b.elements_.push_back({E.kind, E.vertices, E.layer});
  for (const Edge& e : mesh.edges)
  {
    EdgeAttr at;
    at.boundary = e.boundary;
    at.arc = e.arc;
    if (e.arc) at.arc_low_vertex = e.arc_forward ? e.v0 : e.v1;
    if (at.boundary || at.arc) b.attrs_[{e.v0, e.v1}] = at;
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace
{

std::vector<std::vector<int>> vertex_adjacency(const Mesh& mesh)
{
  std::vector<std::vector<int>> adj(mesh.num_vertices());
  for (const Edge& e : mesh.edges)
  {
    adj[e.v0].push_back(e.v1);
    adj[e.v1].push_back(e.v0);
  }
  return adj;
}

std::vector<int> edge_use_count(const Mesh& mesh)
{
  std::vector<int> c(mesh.num_edges(), 0);
  for (const Element& E : mesh.elements)
    for (int k = 0; k < E.num_vertices(); ++k) ++c[E.edges[k]];
  return c;
}

}  // namespace

std::vector<int> detect_singular_points(const Mesh& mesh)
{
  const auto use = edge_use_count(mesh);
  const int nv = mesh.num_vertices();
  std::vector<double> angle(nv, 0.0);
  std::vector<int> bnd(nv, 0), dir(nv, 0), neu(nv, 0);
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    const Element& E = mesh.elements[el];
    for (int k = 0; k < E.num_vertices(); ++k) angle[E.vertices[k]] += element_corner_angle(mesh, el, k);
  }
  for (int e = 0; e < mesh.num_edges(); ++e)
  {
    if (use[e] != 1) continue;
    const Edge& ed = mesh.edges[e];
    for (int v : {ed.v0, ed.v1})
    {
      bnd[v] = 1;
      if (ed.boundary)
      {
        if (ed.boundary->bc == BoundaryCondition::Dirichlet)
          dir[v] = 1;
        else
          neu[v] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < nv; ++v)
  {
    if (!bnd[v]) continue;
    if (angle[v] > std::numbers::pi + 1e-8 || (dir[v] && neu[v])) out.push_back(v);
  }
  return out;
}

Mesh refine_toward_singular_points(const Mesh& mesh, int levels, double q)
{
  AUXEIG_REQUIRE(levels >= 0, ConfigurationError, "grading levels must be nonnegative");
  AUXEIG_REQUIRE(q > 0 && q < 1, ConfigurationError, "grading factor must lie in (0,1)");
  Mesh cur = mesh;
  for (int step = 0; step < levels; ++step)
  {
    std::set<int> sing(cur.singular_points.begin(), cur.singular_points.end());
    if (sing.empty()) break;

    MeshBuilder b;
    for (const Point2& p : cur.vertices) b.add_vertex(p);
    for (const Edge& e : cur.edges)
    {
      if (e.boundary) b.set_boundary(e.v0, e.v1, *e.boundary);
      if (e.arc)
      {
        const double ta = e.arc_forward ? e.arc->theta0 : e.arc->theta1;
        const double tb = e.arc_forward ? e.arc->theta1 : e.arc->theta0;
        b.set_arc(e.v0, e.v1, e.arc->center, e.arc->radius, ta, tb);
      }
    }

    // New vertex on edge e at relative distance q from singular endpoint S.
    std::map<int, int> split_vertex;
    auto split = [&](int e, int S) {
      if (auto it = split_vertex.find(e); it != split_vertex.end()) return it->second;
      const Edge& ed = cur.edges[e];
      const double s = ed.v0 == S ? q : 1.0 - q;
      const int a = b.add_vertex(cur.edge_point(e, s));
      const int other = ed.v0 == S ? ed.v1 : ed.v0;
      if (ed.boundary)
      {
        b.set_boundary(S, a, *ed.boundary);
        b.set_boundary(a, other, *ed.boundary);
      }
      if (ed.arc)
      {
        const double tS = arc_angle(ed, ed.v0 == S ? 0.0 : 1.0);
        const double tA = arc_angle(ed, s);
        const double tO = arc_angle(ed, ed.v0 == S ? 1.0 : 0.0);
        b.set_arc(S, a, ed.arc->center, ed.arc->radius, tS, tA);
        b.set_arc(a, other, ed.arc->center, ed.arc->radius, tA, tO);
      }
      split_vertex[e] = a;
      return a;
    };

    for (int el = 0; el < cur.num_elements(); ++el)
    {
      const Element& E = cur.elements[el];
      const int n = E.num_vertices();
      int loc = -1, hits = 0;
      for (int k = 0; k < n; ++k)
        if (sing.count(E.vertices[k]))
        {
          loc = k;
          ++hits;
        }
      if (hits == 0)
      {
        b.add_element(E.kind, std::span<const int>(E.vertices.data(), n), E.layer);
        continue;
      }
      if (hits > 1)
        throw GeometryError("element " + std::to_string(el) + " touches more than one singular point");

      std::array<int, 4> v{};
      for (int j = 0; j < n; ++j) v[j] = E.vertices[(loc + j) % n];
      const int S = v[0];
      const int ea = E.edges[loc];
      const int eb = E.edges[(loc + n - 1) % n];
      const int a = split(ea, S);
      const int bb = split(eb, S);
      if (E.kind == ElementKind::Triangle)
      {
        const std::array<int, 3> t{S, a, bb};
        const std::array<int, 4> band{a, v[1], v[2], bb};
        b.add_element(ElementKind::Triangle, t, E.layer + 1);
        b.add_element(ElementKind::Quadrilateral, band, E.layer);
      }
      else
      {
        static const std::array<Point2, 4> corner{Point2{0, 0}, Point2{1, 0}, Point2{1, 1}, Point2{0, 1}};
        // Rotated reference point (q,q) expressed in the element's own reference frame.
        const Point2 c0 = corner[loc], c1 = corner[(loc + 1) % 4], c2 = corner[(loc + 2) % 4],
                     c3 = corner[(loc + 3) % 4];
        const Point2 r = (1 - q) * (1 - q) * c0 + q * (1 - q) * c1 + q * q * c2 + (1 - q) * q * c3;
        const int c = b.add_vertex(map_element_point(cur, el, r.x, r.y).x);
        const std::array<int, 4> small{S, a, c, bb};
        const std::array<int, 4> band1{a, v[1], v[2], c};
        const std::array<int, 4> band2{c, v[2], v[3], bb};
        b.add_element(ElementKind::Quadrilateral, small, E.layer + 1);
        b.add_element(ElementKind::Quadrilateral, band1, E.layer);
        b.add_element(ElementKind::Quadrilateral, band2, E.layer);
      }
    }
    Mesh next = b.finalize(cur.singular_points);
    for (int el = 0; el < next.num_elements(); ++el)
      if (element_diameter(next, el) < 1e-12)
        throw GeometryError("grading collapsed element " + std::to_string(el) + " below 1e-12 diameter");
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

int min_singular_distance(const Mesh& mesh)
{
  const auto adj = vertex_adjacency(mesh);
  int best = std::numeric_limits<int>::max();
  std::set<int> sing(mesh.singular_points.begin(), mesh.singular_points.end());
  for (int s : mesh.singular_points)
  {
    std::vector<int> dist(mesh.num_vertices(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty())
    {
      const int v = queue.front();
      queue.pop_front();
      if (v != s && sing.count(v)) best = std::min(best, dist[v]);
      for (int w : adj[v])
        if (dist[w] < 0)
        {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
  }
  return best;
}

std::vector<MeshViolation> validate_mesh(const Mesh& mesh)
{
  std::vector<MeshViolation> out;
  auto report = [&](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };
  const int nv = mesh.num_vertices();
  bool topo_ok = true;

  for (int e = 0; e < mesh.num_edges(); ++e)
  {
    const Edge& ed = mesh.edges[e];
    if (ed.v0 < 0 || ed.v1 < 0 || ed.v0 >= nv || ed.v1 >= nv || ed.v0 == ed.v1)
    {
      report(ViolationKind::Topology, "edge " + std::to_string(e) + " has invalid endpoints");
      topo_ok = false;
    }
  }
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    const Element& E = mesh.elements[el];
    for (int k = 0; k < E.num_vertices(); ++k)
    {
      const int e = E.edges[k];
      if (e < 0 || e >= mesh.num_edges() || E.vertices[k] < 0 || E.vertices[k] >= nv)
      {
        report(ViolationKind::Topology, "element " + std::to_string(el) + " references invalid ids");
        topo_ok = false;
        continue;
      }
      const int a = E.vertices[k], b = E.vertices[(k + 1) % E.num_vertices()];
      const Edge& ed = mesh.edges[e];
      if (!((ed.v0 == a && ed.v1 == b) || (ed.v0 == b && ed.v1 == a)))
      {
        report(ViolationKind::Topology, "element " + std::to_string(el) + " edge " + std::to_string(k) +
                                            " does not join its vertices");
        topo_ok = false;
      }
    }
  }
  if (!topo_ok) return out;

  // Each edge: one or two users; two users must traverse it in opposite directions.
  std::vector<std::vector<std::pair<int, int>>> users(mesh.num_edges());
  for (int el = 0; el < mesh.num_elements(); ++el)
    for (int k = 0; k < mesh.elements[el].num_vertices(); ++k)
      users[mesh.elements[el].edges[k]].push_back({el, k});
  for (int e = 0; e < mesh.num_edges(); ++e)
  {
    const auto& u = users[e];
    if (u.empty())
      report(ViolationKind::Conformity, "edge " + std::to_string(e) + " is not used by any element");
    else if (u.size() > 2)
      report(ViolationKind::Conformity,
             "edge " + std::to_string(e) + " is shared by " + std::to_string(u.size()) + " elements");
    else if (u.size() == 2)
    {
      if (mesh.local_edge_orientation(u[0].first, u[0].second) ==
          mesh.local_edge_orientation(u[1].first, u[1].second))
        report(ViolationKind::Orientation,
               "edge " + std::to_string(e) + " traversed in the same direction by both neighbours");
    }
    else if (!mesh.edges[e].boundary)
      report(ViolationKind::UntaggedBoundary, "boundary edge " + std::to_string(e) + " carries no tag");

    const Edge& ed = mesh.edges[e];
    if (ed.arc)
    {
      const double tol = 1e-12 * std::max(1.0, ed.arc->radius) * 10;
      const Point2 p0 = ed.arc->at(ed.arc_forward ? ed.arc->theta0 : ed.arc->theta1);
      const Point2 p1 = ed.arc->at(ed.arc_forward ? ed.arc->theta1 : ed.arc->theta0);
      if (!(ed.arc->radius > 0) || !(ed.arc->theta0 < ed.arc->theta1) ||
          distance(p0, mesh.vertices[ed.v0]) > tol || distance(p1, mesh.vertices[ed.v1]) > tol)
        report(ViolationKind::ArcMismatch, "arc on edge " + std::to_string(e) + " does not match its endpoints");
    }
  }

  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    bool bad = false;
    for (double xi : {0.1, 0.5, 0.9})
      for (double eta : {0.1, 0.5, 0.9})
      {
        if (mesh.elements[el].kind == ElementKind::Triangle && xi + eta >= 1.0) continue;
        if (!(map_element_point(mesh, el, xi, eta).det() > 0)) bad = true;
      }
    if (mesh.elements[el].kind == ElementKind::Triangle && !(map_element_point(mesh, el, 0.3, 0.3).det() > 0))
      bad = true;
    if (bad) report(ViolationKind::Orientation, "element " + std::to_string(el) + " is not positively oriented");
  }

  for (int s : mesh.singular_points)
    if (s < 0 || s >= nv) report(ViolationKind::Topology, "singular point id out of range");
  if (mesh.singular_points.size() >= 2 && min_singular_distance(mesh) < 2)
    report(ViolationKind::SingularDistance, "two singular points are closer than two graph steps");
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? "D" : "N"; }

std::string to_string(DomainType d)
{
  switch (d)
  {
  case DomainType::UnitSquare: return "unit_square";
  case DomainType::SlitDisk: return "slit_disk";
  case DomainType::HalfDisk1: return "half_disk_1";
  case DomainType::HalfDisk2: return "half_disk_2";
  case DomainType::Bridge: return "bridge";
  }
  return "unknown";
}

DomainType domain_from_string(const std::string& s)
{
  for (DomainType d : {DomainType::UnitSquare, DomainType::SlitDisk, DomainType::HalfDisk1,
                       DomainType::HalfDisk2, DomainType::Bridge})
    if (to_string(d) == s) return d;
  throw ConfigurationError("unknown domain '" + s + "'");
}

std::string mesh_to_string(const Mesh& mesh)
{
  std::ostringstream os;
  os << std::setprecision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (int i = 0; i < mesh.num_vertices(); ++i)
    os << i << ' ' << mesh.vertices[i].x << ' ' << mesh.vertices[i].y << '\n';
  os << "edges " << mesh.num_edges() << '\n';
  for (int i = 0; i < mesh.num_edges(); ++i)
  {
    const Edge& e = mesh.edges[i];
    os << i << ' ' << e.v0 << ' ' << e.v1 << ' ';
    if (e.boundary)
      os << to_string(e.boundary->bc) << ' ' << (e.boundary->label.empty() ? "-" : e.boundary->label);
    else
      os << "- -";
    if (e.arc)
      os << " arc " << e.arc->center.x << ' ' << e.arc->center.y << ' ' << e.arc->radius << ' '
         << e.arc->theta0 << ' ' << e.arc->theta1 << ' ' << (e.arc_forward ? 1 : 0);
    os << '\n';
  }
  os << "elements " << mesh.num_elements() << '\n';
  for (int i = 0; i < mesh.num_elements(); ++i)
  {
    const Element& E = mesh.elements[i];
    os << i << ' ' << (E.kind == ElementKind::Triangle ? 'T' : 'Q') << ' ' << E.layer;
    for (int k = 0; k < E.num_vertices(); ++k) os << ' ' << E.vertices[k];
    os << '\n';
  }
  os << "singular " << mesh.singular_points.size() << '\n';
  for (int s : mesh.singular_points) os << s << '\n';
  return os.str();
}

void write_mesh(const Mesh& mesh, const std::string& path)
{
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << mesh_to_string(mesh);
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace auxeig

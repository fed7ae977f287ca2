#include "auxeig/hp_space.hpp"

#include "auxeig/errors.hpp"

#include <algorithm>
#include <deque>

namespace auxeig
{

std::string to_string(Family f) { return f == Family::P ? "P" : "HP"; }

Family family_from_string(const std::string& s)
{
  if (s == "P" || s == "p") return Family::P;
  if (s == "HP" || s == "hp") return Family::HP;
  throw ConfigurationError("unknown family '" + s + "' (expected P or HP)");
}

std::vector<int> element_layers(const Mesh& mesh)
{
  std::vector<std::vector<int>> touching(mesh.num_vertices());
  for (int el = 0; el < mesh.num_elements(); ++el)
    for (int k = 0; k < mesh.elements[el].num_vertices(); ++k) touching[mesh.elements[el].vertices[k]].push_back(el);

  std::vector<int> layer(mesh.num_elements(), -1);
  std::deque<int> queue;
  for (int s : mesh.singular_points)
    for (int el : touching[s])
      if (layer[el] < 0)
      {
        layer[el] = 0;
        queue.push_back(el);
      }
  while (!queue.empty())
  {
    const int el = queue.front();
    queue.pop_front();
    const Element& E = mesh.elements[el];
    for (int k = 0; k < E.num_vertices(); ++k)
      for (int nb : touching[E.vertices[k]])
        if (layer[nb] < 0)
        {
          layer[nb] = layer[el] + 1;
          queue.push_back(nb);
        }
  }
  return layer;
}

DegreeDistribution assign_degrees(const Mesh& mesh, Family family, int p)
{
  AUXEIG_REQUIRE(p >= 1, ConfigurationError, "polynomial degree must be >= 1");
  DegreeDistribution d;
  d.family = family;
  d.base_degree = p;
  d.element_degree.assign(mesh.num_elements(), p);
  if (family == Family::HP)
  {
    const auto layer = element_layers(mesh);
    for (int el = 0; el < mesh.num_elements(); ++el)
      if (layer[el] >= 0) d.element_degree[el] = std::min(p, layer[el] + 1);
  }
  d.edge_degree.assign(mesh.num_edges(), 1);
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    const Element& E = mesh.elements[el];
    for (int k = 0; k < E.num_vertices(); ++k)
      d.edge_degree[E.edges[k]] = std::max(d.edge_degree[E.edges[k]], d.element_degree[el]);
  }
  return d;
}

SpacePair build_auxiliary_degrees(const DegreeDistribution& primal)
{
  SpacePair sp;
  sp.primal = primal;
  sp.auxiliary.edge_degree.resize(primal.edge_degree.size());
  sp.auxiliary.element_degree.resize(primal.element_degree.size());
  for (size_t e = 0; e < primal.edge_degree.size(); ++e) sp.auxiliary.edge_degree[e] = primal.edge_degree[e] + 1;
  for (size_t t = 0; t < primal.element_degree.size(); ++t)
    sp.auxiliary.element_degree[t] = primal.element_degree[t] + 2;
  return sp;
}

std::vector<ShapeId> interior_shapes(ElementKind kind, int lo, int hi)
{
  std::vector<ShapeId> out;
  if (kind == ElementKind::Quadrilateral)
  {
    for (int d = std::max(lo, 2); d <= hi; ++d)
      for (int i = 2; i <= d; ++i)
        for (int j = 2; j <= d; ++j)
          if (std::max(i, j) == d) out.push_back(quad_interior_shape(i, j));
  }
  else
  {
    for (int d = std::max(lo, 3); d <= hi; ++d)
      for (int n1 = 0; n1 <= d - 3; ++n1) out.push_back(triangle_interior_shape(n1, d - 3 - n1));
  }
  return out;
}

int local_primal_dimension(ElementKind kind, int m)
{
  const int nv = vertex_count(kind);
  return nv + nv * std::max(0, m - 1) + static_cast<int>(interior_shapes(kind, 2, m).size());
}

SpaceLayout primal_layout(const Mesh& mesh, const DegreeDistribution& deg)
{
  AUXEIG_REQUIRE(static_cast<int>(deg.element_degree.size()) == mesh.num_elements() &&
                     static_cast<int>(deg.edge_degree.size()) == mesh.num_edges(),
                 ContractViolation, "degree distribution does not match mesh");
  SpaceLayout L;
  L.vertices = true;
  L.edge_lo.assign(mesh.num_edges(), 2);
  L.edge_hi = deg.edge_degree;
  L.interior_lo.assign(mesh.num_elements(), 2);
  L.interior_hi = deg.element_degree;
  return L;
}

SpaceLayout auxiliary_layout(const Mesh& mesh, const AuxiliaryDegrees& aux)
{
  AUXEIG_REQUIRE(static_cast<int>(aux.element_degree.size()) == mesh.num_elements() &&
                     static_cast<int>(aux.edge_degree.size()) == mesh.num_edges(),
                 ContractViolation, "auxiliary degrees do not match mesh");
  SpaceLayout L;
  L.vertices = false;
  L.edge_lo = aux.edge_degree;
  L.edge_hi = aux.edge_degree;
  L.interior_lo = aux.element_degree;
  L.interior_hi = aux.element_degree;
  return L;
}

int DofMap::find(const DofKey& k) const
{
  auto it = index.find(k);
  return it == index.end() ? -1 : it->second;
}

DofMap build_dof_map(const Mesh& mesh, const SpaceLayout& layout)
{
  DofMap dm;
  std::vector<char> dir_vertex(mesh.num_vertices(), 0), dir_edge(mesh.num_edges(), 0);
  for (int e = 0; e < mesh.num_edges(); ++e)
  {
    const Edge& ed = mesh.edges[e];
    if (ed.boundary && ed.boundary->bc == BoundaryCondition::Dirichlet)
    {
      dir_edge[e] = 1;
      dir_vertex[ed.v0] = dir_vertex[ed.v1] = 1;
    }
  }
  auto add = [&](DofKey k, bool constrained) {
    if (constrained)
      dm.constrained.push_back(k);
    else
    {
      dm.index.emplace(k, dm.size++);
      dm.keys.push_back(k);
    }
  };

  if (layout.vertices)
  {
    std::vector<char> used(mesh.num_vertices(), 0);
    for (const Element& E : mesh.elements)
      for (int k = 0; k < E.num_vertices(); ++k) used[E.vertices[k]] = 1;
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (used[v]) add({DofKind::Vertex, v, 0, 0}, dir_vertex[v]);
  }
  for (int e = 0; e < mesh.num_edges(); ++e)
    for (int d = std::max(2, layout.edge_lo[e]); d <= layout.edge_hi[e]; ++d)
    {
      add({DofKind::Edge, e, d, 0}, dir_edge[e]);
      dm.max_degree = std::max(dm.max_degree, d);
    }
  for (int el = 0; el < mesh.num_elements(); ++el)
    for (const ShapeId& s : interior_shapes(mesh.elements[el].kind, layout.interior_lo[el], layout.interior_hi[el]))
    {
      add({DofKind::Interior, el, s.i, s.j}, false);
      dm.max_degree = std::max(dm.max_degree, s.degree);
    }

  dm.element_dofs.resize(mesh.num_elements());
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    const Element& E = mesh.elements[el];
    auto& loc = dm.element_dofs[el];
    if (layout.vertices)
      for (int k = 0; k < E.num_vertices(); ++k)
        if (int g = dm.find({DofKind::Vertex, E.vertices[k], 0, 0}); g >= 0) loc.push_back({vertex_shape(k), g, 1.0});
    for (int k = 0; k < E.num_vertices(); ++k)
    {
      const int e = E.edges[k];
      const int o = mesh.local_edge_orientation(el, k);
      for (int d = std::max(2, layout.edge_lo[e]); d <= layout.edge_hi[e]; ++d)
        if (int g = dm.find({DofKind::Edge, e, d, 0}); g >= 0)
          loc.push_back({edge_shape(k, d), g, (o < 0 && d % 2 == 1) ? -1.0 : 1.0});
    }
    for (const ShapeId& s : interior_shapes(E.kind, layout.interior_lo[el], layout.interior_hi[el]))
      loc.push_back({s, dm.find({DofKind::Interior, el, s.i, s.j}), 1.0});
  }
  return dm;
}

DofMap build_dof_map(const Mesh& mesh, const DegreeDistribution& deg)
{
  return build_dof_map(mesh, primal_layout(mesh, deg));
}

DofMap build_dof_map(const Mesh& mesh, const AuxiliaryDegrees& aux)
{
  return build_dof_map(mesh, auxiliary_layout(mesh, aux));
}

std::vector<int> embedding(const DofMap& from, const DofMap& to)
{
  std::vector<int> map(from.size);
  for (int i = 0; i < from.size; ++i)
  {
    map[i] = to.find(from.keys[i]);
    if (map[i] < 0) throw ConfigurationError("space is not contained in the target space (missing basis function)");
  }
  return map;
}

}  // namespace auxeig

#pragma once

#include "auxeig/basis.hpp"
#include "auxeig/mesh.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace auxeig
{

enum class Family
{
  P,
  HP
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct DegreeDistribution
{
  Family family = Family::P;
  int base_degree = 1;
  std::vector<int> element_degree;
  std::vector<int> edge_degree;
};

// Exact degrees of the auxiliary functions: edge_degree[e] = primal edge degree + 1,
// element_degree[T] = primal element degree + 2.
struct AuxiliaryDegrees
{
  std::vector<int> edge_degree;
  std::vector<int> element_degree;
};

struct SpacePair
{
  DegreeDistribution primal;
  AuxiliaryDegrees auxiliary;
};

DegreeDistribution assign_degrees(const Mesh& mesh, Family family, int p);
SpacePair build_auxiliary_degrees(const DegreeDistribution& primal);

// Element-distance layers measured from elements touching a singular point
// (0 for those elements; -1 when the mesh has no singular points).
std::vector<int> element_layers(const Mesh& mesh);

enum class DofKind : int
{
  Vertex = 0,
  Edge = 1,
  Interior = 2
};

// Mesh-level identity of a basis function; equal keys denote the same function in
// any space built on the same mesh.
struct DofKey
{
  DofKind kind = DofKind::Vertex;
  int entity = 0;  // vertex, edge or element id
  int a = 0;       // edge degree, or first interior index
  int b = 0;       // second interior index
  auto operator<=>(const DofKey&) const = default;
};

struct LocalDof
{
  ShapeId shape;
  int global = -1;
  double sign = 1.0;
};

struct DofMap
{
  int size = 0;                                      // unconstrained functions
  std::vector<DofKey> keys;                          // global index -> key
  std::map<DofKey, int> index;                       // key -> global index (free functions only)
  std::vector<DofKey> constrained;                   // Dirichlet-eliminated functions
  std::vector<std::vector<LocalDof>> element_dofs;   // free functions per element
  int max_degree = 1;

  int find(const DofKey& k) const;  // -1 when absent or constrained
};

// Layout of the functions in a space: which vertex/edge/interior functions appear.
struct SpaceLayout
{
  bool vertices = true;
  std::vector<int> edge_lo, edge_hi;          // per edge degree range
  std::vector<int> interior_lo, interior_hi;  // per element degree range
};

SpaceLayout primal_layout(const Mesh& mesh, const DegreeDistribution& deg);
SpaceLayout auxiliary_layout(const Mesh& mesh, const AuxiliaryDegrees& aux);

DofMap build_dof_map(const Mesh& mesh, const SpaceLayout& layout);
DofMap build_dof_map(const Mesh& mesh, const DegreeDistribution& deg);
DofMap build_dof_map(const Mesh& mesh, const AuxiliaryDegrees& aux);

// Interior shape functions of an element with degree in [lo, hi].
std::vector<ShapeId> interior_shapes(ElementKind kind, int lo, int hi);

// Local dimension of the full primal space of degree m on one element.
int local_primal_dimension(ElementKind kind, int m);

// Index map from `from` into `to`; throws ConfigurationError if some free function
// of `from` is missing in `to`.
std::vector<int> embedding(const DofMap& from, const DofMap& to);

}  // namespace auxeig

#pragma once

#include "auxeig/hp_space.hpp"
#include "auxeig/mesh.hpp"
#include "auxeig/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>

namespace auxeig
{

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

enum class MapKind
{
  Affine,
  Bilinear,
  Blended
};

struct ElementMap
{
  const Mesh* mesh = nullptr;
  int element = -1;
  MapKind kind = MapKind::Affine;

  MapJet operator()(double xi, double eta) const { return map_element_point(*mesh, element, xi, eta); }
};

ElementMap element_map(const Mesh& mesh, int el);

// Symmetric matrix holding only its lower triangle.
class SparseSymMatrix
{
public:
  SparseSymMatrix() = default;
  explicit SparseSymMatrix(SpMat lower) : lower_(std::move(lower)) {}

  int dim() const { return static_cast<int>(lower_.rows()); }
  const SpMat& lower() const { return lower_; }
  SpMat full() const;
  Vec operator*(const Vec& x) const;
  Mat operator*(const Mat& x) const;
  double bilinear(const Vec& x, const Vec& y) const { return x.dot((*this) * y); }

private:
  SpMat lower_;
};

struct FormSet
{
  SparseSymMatrix K_VV, M_VV, K_WW, M_WW;
  SpMat K_WV, M_WV;  // W rows, V columns
};

struct AssemblyOptions
{
  int quad_increment = 8;  // extra exactness on curved and non-parallelogram elements
};

// Stiffness and mass on a single space.
struct SpaceForms
{
  SparseSymMatrix K, M;
};

SpaceForms assemble_space(const Mesh& mesh, const DofMap& dof, const AssemblyOptions& opts = {});
FormSet assemble_forms(const Mesh& mesh, const SpacePair& pair, const DofMap& dofV, const DofMap& dofW,
                       const AssemblyOptions& opts = {});

// Quadrature exactness used on element `el` for functions up to degree `maxdeg`.
int element_quadrature_degree(const Mesh& mesh, int el, int maxdeg, const AssemblyOptions& opts);

// Coordinate text dump: "row col value" per stored entry.
void write_matrix(const SpMat& A, const std::string& path);

// Evaluation of a finite element function given by coefficients on a DofMap.
class FieldEvaluator
{
public:
  FieldEvaluator(const Mesh& mesh, const DofMap& dof, Vec coeffs);

  struct Sample
  {
    double value = 0.0;
    std::array<double, 2> grad{};  // physical gradient
  };

  Sample eval_reference(int el, double xi, double eta) const;
  // Locates the element containing p (Newton inversion of the element maps).
  std::optional<Sample> eval(Point2 p) const;
  std::optional<std::pair<int, std::array<double, 2>>> locate(Point2 p) const;

  const Mesh& mesh() const { return *mesh_; }
  const DofMap& dofs() const { return *dof_; }
  const Vec& coefficients() const { return c_; }

private:
  const Mesh* mesh_;
  const DofMap* dof_;
  Vec c_;
  std::vector<std::array<double, 4>> bbox_;  // xmin, xmax, ymin, ymax
};

// Inverse element map; nullopt when the Newton iteration fails or the point lies outside.
std::optional<std::array<double, 2>> inverse_map(const Mesh& mesh, int el, Point2 p);

}  // namespace auxeig

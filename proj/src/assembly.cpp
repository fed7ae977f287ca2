#include "auxeig/assembly.hpp"

#include "auxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>

namespace auxeig
{

ElementMap element_map(const Mesh& mesh, int el)
{
  AUXEIG_REQUIRE(el >= 0 && el < mesh.num_elements(), ContractViolation, "element id out of range");
  ElementMap m;
  m.mesh = &mesh;
  m.element = el;
  if (element_is_curved(mesh, el))
    m.kind = MapKind::Blended;
  else
    m.kind = mesh.elements[el].kind == ElementKind::Triangle ? MapKind::Affine : MapKind::Bilinear;
  return m;
}

SpMat SparseSymMatrix::full() const
{
  SpMat f = lower_.selfadjointView<Eigen::Lower>();
  return f;
}

Vec SparseSymMatrix::operator*(const Vec& x) const { return lower_.selfadjointView<Eigen::Lower>() * x; }
Mat SparseSymMatrix::operator*(const Mat& x) const { return lower_.selfadjointView<Eigen::Lower>() * x; }

namespace
{

struct TabKey
{
  int kind, qdeg, role, index, degree, i, j;
  auto operator<=>(const TabKey&) const = default;
};

// Shape values and reference gradients at the points of a rule: [v..., dxi..., deta...].
const std::vector<double>& tabulate(ElementKind kind, int qdeg, const ShapeId& s)
{
  static std::mutex mtx;
  static std::map<TabKey, std::vector<double>> cache;
  const TabKey key{static_cast<int>(kind), qdeg, static_cast<int>(s.role), s.index, s.degree, s.i, s.j};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const QuadratureRule& q = quadrature_for(kind, qdeg);
  const size_t nq = q.weights.size();
  std::vector<double> t(3 * nq);
  for (size_t k = 0; k < nq; ++k)
  {
    const ShapeValue v = shape_eval(kind, s, q.points[k][0], q.points[k][1]);
    t[k] = v.value;
    t[nq + k] = v.grad[0];
    t[2 * nq + k] = v.grad[1];
  }
  return cache.emplace(key, std::move(t)).first->second;
}

struct LocalMatrices
{
  Mat K, M;
};

LocalMatrices local_matrices(const Mesh& mesh, int el, const std::vector<const LocalDof*>& dofs, int qdeg)
{
  const ElementKind kind = mesh.elements[el].kind;
  const QuadratureRule& q = quadrature_for(kind, qdeg);
  const int nq = static_cast<int>(q.weights.size());
  const int n = static_cast<int>(dofs.size());

  std::vector<double> scale(nq);
  std::vector<std::array<double, 4>> inv(nq);  // rows of J^{-T}
  for (int k = 0; k < nq; ++k)
  {
    const MapJet J = map_element_point(mesh, el, q.points[k][0], q.points[k][1]);
    const double det = J.det();
    if (!(det > 0)) throw GeometryError("nonpositive Jacobian on element " + std::to_string(el));
    scale[k] = std::sqrt(q.weights[k] * det);
    const auto& a = J.jac;
    inv[k] = {a[3] / det, -a[2] / det, -a[1] / det, a[0] / det};
  }

  Mat Phi(n, nq), Gx(n, nq), Gy(n, nq);
  for (int i = 0; i < n; ++i)
  {
    const std::vector<double>& t = tabulate(kind, qdeg, dofs[i]->shape);
    const double sg = dofs[i]->sign;
    for (int k = 0; k < nq; ++k)
    {
      const double s = sg * scale[k];
      const double gxi = t[nq + k], geta = t[2 * nq + k];
      Phi(i, k) = s * t[k];
      Gx(i, k) = s * (inv[k][0] * gxi + inv[k][1] * geta);
      Gy(i, k) = s * (inv[k][2] * gxi + inv[k][3] * geta);
    }
  }
  LocalMatrices L;
  L.K.noalias() = Gx * Gx.transpose();
  L.K.noalias() += Gy * Gy.transpose();
  L.M.noalias() = Phi * Phi.transpose();
  return L;
}

int local_max_degree(const std::vector<const LocalDof*>& dofs)
{
  int d = 1;
  for (const LocalDof* l : dofs) d = std::max(d, l->shape.degree);
  return d;
}

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat from_triplets(int rows, int cols, const Triplets& t)
{
  SpMat A(rows, cols);
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  return A;
}

}  // namespace

namespace
{

// Straight quads that are not parallelograms have a non-constant Jacobian, so the
// stiffness integrand is rational just as on curved elements.
bool element_is_nonaffine(const Mesh& mesh, int el)
{
  if (element_is_curved(mesh, el)) return true;
  const Element& e = mesh.elements[el];
  if (e.kind != ElementKind::Quadrilateral) return false;
  const Point2 a = mesh.vertices[e.vertices[0]], b = mesh.vertices[e.vertices[1]];
  const Point2 c = mesh.vertices[e.vertices[2]], d = mesh.vertices[e.vertices[3]];
  const double scale = std::max({std::abs(c.x - a.x), std::abs(c.y - a.y), std::abs(d.x - b.x), std::abs(d.y - b.y)});
  return std::abs(a.x + c.x - b.x - d.x) > 1e-13 * scale || std::abs(a.y + c.y - b.y - d.y) > 1e-13 * scale;
}

}  // namespace

int element_quadrature_degree(const Mesh& mesh, int el, int maxdeg, const AssemblyOptions& opts)
{
  return std::min(max_quadrature_degree,
                  2 * maxdeg + 2 + (element_is_nonaffine(mesh, el) ? opts.quad_increment : 0));
}

SpaceForms assemble_space(const Mesh& mesh, const DofMap& dof, const AssemblyOptions& opts)
{
  Triplets tk, tm;
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    std::vector<const LocalDof*> loc;
    for (const LocalDof& l : dof.element_dofs[el]) loc.push_back(&l);
    if (loc.empty()) continue;
    const int qdeg = element_quadrature_degree(mesh, el, local_max_degree(loc), opts);
    const LocalMatrices L = local_matrices(mesh, el, loc, qdeg);
    const int n = static_cast<int>(loc.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        const int gi = loc[i]->global, gj = loc[j]->global;
        if (gi < gj) continue;
        tk.emplace_back(gi, gj, L.K(i, j));
        tm.emplace_back(gi, gj, L.M(i, j));
      }
  }
  return {SparseSymMatrix(from_triplets(dof.size, dof.size, tk)), SparseSymMatrix(from_triplets(dof.size, dof.size, tm))};
}

FormSet assemble_forms(const Mesh& mesh, const SpacePair& pair, const DofMap& dofV, const DofMap& dofW,
                       const AssemblyOptions& opts)
{
  (void)pair;
  Triplets kvv, mvv, kww, mww, kwv, mwv;
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    std::vector<const LocalDof*> loc;
    for (const LocalDof& l : dofV.element_dofs[el]) loc.push_back(&l);
    const int nV = static_cast<int>(loc.size());
    for (const LocalDof& l : dofW.element_dofs[el]) loc.push_back(&l);
    const int n = static_cast<int>(loc.size());
    if (n == 0) continue;
    const int qdeg = element_quadrature_degree(mesh, el, local_max_degree(loc), opts);
    const LocalMatrices L = local_matrices(mesh, el, loc, qdeg);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        const int gi = loc[i]->global, gj = loc[j]->global;
        const bool iv = i < nV, jv = j < nV;
        if (iv && jv)
        {
          if (gi >= gj)
          {
            kvv.emplace_back(gi, gj, L.K(i, j));
            mvv.emplace_back(gi, gj, L.M(i, j));
          }
        }
        else if (!iv && !jv)
        {
          if (gi >= gj)
          {
            kww.emplace_back(gi, gj, L.K(i, j));
            mww.emplace_back(gi, gj, L.M(i, j));
          }
        }
        else if (!iv && jv)
        {
          kwv.emplace_back(gi, gj, L.K(i, j));
          mwv.emplace_back(gi, gj, L.M(i, j));
        }
      }
  }
  FormSet f;
  f.K_VV = SparseSymMatrix(from_triplets(dofV.size, dofV.size, kvv));
  f.M_VV = SparseSymMatrix(from_triplets(dofV.size, dofV.size, mvv));
  f.K_WW = SparseSymMatrix(from_triplets(dofW.size, dofW.size, kww));
  f.M_WW = SparseSymMatrix(from_triplets(dofW.size, dofW.size, mww));
  f.K_WV = from_triplets(dofW.size, dofV.size, kwv);
  f.M_WV = from_triplets(dofW.size, dofV.size, mwv);
  return f;
}

void write_matrix(const SpMat& A, const std::string& path)
{
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << std::setprecision(17);
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) f << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  if (!f) throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------

std::optional<std::array<double, 2>> inverse_map(const Mesh& mesh, int el, Point2 p)
{
  const bool tri = mesh.elements[el].kind == ElementKind::Triangle;
  double xi = tri ? 1.0 / 3 : 0.5, eta = tri ? 1.0 / 3 : 0.5;
  for (int it = 0; it < 60; ++it)
  {
    const MapJet J = map_element_point(mesh, el, xi, eta);
    const double rx = J.x.x - p.x, ry = J.x.y - p.y;
    const double det = J.det();
    if (!(std::abs(det) > 0)) return std::nullopt;
    const double dxi = (J.jac[3] * rx - J.jac[1] * ry) / det;
    const double deta = (-J.jac[2] * rx + J.jac[0] * ry) / det;
    xi -= dxi;
    eta -= deta;
    // Keep the iterate near the reference element so the blended map stays meaningful.
    xi = std::clamp(xi, -0.5, 1.5);
    eta = std::clamp(eta, -0.5, 1.5);
    if (std::abs(dxi) + std::abs(deta) < 1e-14) break;
  }
  const MapJet J = map_element_point(mesh, el, xi, eta);
  if (distance(J.x, p) > 1e-10 * std::max(1.0, element_diameter(mesh, el))) return std::nullopt;
  constexpr double tol = 1e-10;
  const bool inside = tri ? (xi >= -tol && eta >= -tol && xi + eta <= 1 + tol)
                          : (xi >= -tol && eta >= -tol && xi <= 1 + tol && eta <= 1 + tol);
  if (!inside) return std::nullopt;
  return std::array<double, 2>{xi, eta};
}

FieldEvaluator::FieldEvaluator(const Mesh& mesh, const DofMap& dof, Vec coeffs)
    : mesh_(&mesh), dof_(&dof), c_(std::move(coeffs))
{
  AUXEIG_REQUIRE(c_.size() == dof.size, ContractViolation, "coefficient vector does not match the space");
  bbox_.resize(mesh.num_elements());
  for (int el = 0; el < mesh.num_elements(); ++el)
  {
    std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j)
      {
        double xi = i / 8.0, eta = j / 8.0;
        if (mesh.elements[el].kind == ElementKind::Triangle && xi + eta > 1.0) continue;
        const Point2 x = map_element_point(mesh, el, xi, eta).x;
        b = {std::min(b[0], x.x), std::max(b[1], x.x), std::min(b[2], x.y), std::max(b[3], x.y)};
      }
    const double pad = 1e-3 * std::max(b[1] - b[0], b[3] - b[2]) + 1e-12;
    bbox_[el] = {b[0] - pad, b[1] + pad, b[2] - pad, b[3] + pad};
  }
}

FieldEvaluator::Sample FieldEvaluator::eval_reference(int el, double xi, double eta) const
{
  const ElementKind kind = mesh_->elements[el].kind;
  double v = 0, gxi = 0, geta = 0;
  for (const LocalDof& l : dof_->element_dofs[el])
  {
    const double c = c_[l.global] * l.sign;
    if (c == 0.0) continue;
    const ShapeValue s = shape_eval(kind, l.shape, xi, eta);
    v += c * s.value;
    gxi += c * s.grad[0];
    geta += c * s.grad[1];
  }
  const MapJet J = map_element_point(*mesh_, el, xi, eta);
  const double det = J.det();
  Sample out;
  out.value = v;
  out.grad = {(J.jac[3] * gxi - J.jac[2] * geta) / det, (-J.jac[1] * gxi + J.jac[0] * geta) / det};
  return out;
}

std::optional<std::pair<int, std::array<double, 2>>> FieldEvaluator::locate(Point2 p) const
{
  for (int el = 0; el < mesh_->num_elements(); ++el)
  {
    const auto& b = bbox_[el];
    if (p.x < b[0] || p.x > b[1] || p.y < b[2] || p.y > b[3]) continue;
    if (auto r = inverse_map(*mesh_, el, p)) return std::pair{el, *r};
  }
  return std::nullopt;
}

std::optional<FieldEvaluator::Sample> FieldEvaluator::eval(Point2 p) const
{
  auto loc = locate(p);
  if (!loc) return std::nullopt;
  return eval_reference(loc->first, loc->second[0], loc->second[1]);
}

}  // namespace auxeig

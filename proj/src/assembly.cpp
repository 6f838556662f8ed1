#include "curvedfs/assembly.hpp"

#include "curvedfs/quadrature.hpp"

#include <array>

namespace curvedfs {

const char* to_string(Scheme s) { return s == Scheme::Standard ? "standard" : "modified"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "standard") return Scheme::Standard;
  if (s == "modified") return Scheme::Modified;
  throw ValidationError("unknown scheme '" + s + "' (expected standard or modified)");
}

Discretization::Discretization(const Mesh& mesh)
    : mesh_(&mesh),
      V_(build_V(mesh)),
      Q_(build_Q(mesh)),
      R_(build_R(mesh)),
      Y_(build_Y(mesh)),
      Sigma_(build_Sigma(mesh)) {
  const int nt = mesh.num_triangles();
  geometry_.reserve(nt);
  v_fields_.reserve(nt);
  reconstruction_.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    geometry_.push_back(geometry_of(mesh, t));
    v_fields_.push_back(reference_fields(SpaceKind::V, geometry_.back()));
    reconstruction_.push_back(local_reconstruction_matrix(geometry_.back()));
  }
}

SparseMatrix assemble_viscous(const Discretization& d, int quad_degree) {
  const QuadRule& q = triangle_rule(quad_degree);
  const int nt = d.mesh().num_triangles();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nt) * 14 * 14);
  std::array<Mat2, 14> grads;
  for (int t = 0; t < nt; ++t) {
    const ElementGeometry& g = d.geometry(t);
    const auto& fields = d.v_fields(t);
    Eigen::Matrix<double, 14, 14> local = Eigen::Matrix<double, 14, 14>::Zero();
    for (std::size_t m = 0; m < q.size(); ++m) {
      const RefPoint& x = q.points[m];
      const PiolaEval pe = piola_at(g, x);
      for (int i = 0; i < 14; ++i) {
        const Vec2 v = fields[i].value(x);
        const Mat2 jv = fields[i].jacobian(x);
        Mat2 dref;
        for (int k = 0; k < 2; ++k) dref.col(k) = pe.dA[k] * v + pe.A * jv.col(k);
        grads[i] = dref * pe.DF_inv;
      }
      const double w = q.weights[m] * pe.det;
      for (int i = 0; i < 14; ++i)
        for (int j = i; j < 14; ++j) local(i, j) += w * grads[i].cwiseProduct(grads[j]).sum();
    }
    local.triangularView<Eigen::StrictlyLower>() = local.transpose();
    const auto& map = d.V().local_to_global[t];
    for (int i = 0; i < 14; ++i)
      for (int j = 0; j < 14; ++j) triplets.emplace_back(map[i].dof, map[j].dof, local(i, j));
  }
  SparseMatrix a(d.V().n_dofs, d.V().n_dofs);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

SparseMatrix assemble_div(const Discretization& d) {
  // Integrand q div v is quadratic on the reference element.
  const QuadRule& q = triangle_rule(4);
  const int nt = d.mesh().num_triangles();
  const auto& p1 = refelem::p1_basis();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nt) * 3 * 14);
  for (int t = 0; t < nt; ++t) {
    const auto& fields = d.v_fields(t);
    Eigen::Matrix<double, 3, 14> local = Eigen::Matrix<double, 3, 14>::Zero();
    for (std::size_t m = 0; m < q.size(); ++m) {
      const RefPoint& x = q.points[m];
      for (int j = 0; j < 14; ++j) {
        const double div = fields[j].divergence(x);
        for (int i = 0; i < 3; ++i) local(i, j) -= q.weights[m] * p1[i].value(x) * div;
      }
    }
    const auto& qmap = d.Q().local_to_global[t];
    const auto& vmap = d.V().local_to_global[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 14; ++j) triplets.emplace_back(qmap[i].dof, vmap[j].dof, local(i, j));
  }
  SparseMatrix b(d.Q().n_dofs, d.V().n_dofs);
  b.setFromTriplets(triplets.begin(), triplets.end());
  return b;
}

Eigen::VectorXd assemble_rhs(const Discretization& d, const Eigen::VectorXd& f_y, Scheme scheme) {
  if (f_y.size() != d.Y().n_dofs) throw ValidationError("assemble_rhs: f_h has wrong size");
  // Covariant f_h against contravariant v: the Jacobians cancel and the
  // reference integrand has degree <= 4.
  const QuadRule& q = triangle_rule(4);
  const auto& ned = refelem::ned1_basis();
  static const Eigen::Matrix<double, 8, 8> rt_ned = [&] {
    const auto& rt = refelem::rt1_basis();
    Eigen::Matrix<double, 8, 8> g = Eigen::Matrix<double, 8, 8>::Zero();
    for (std::size_t m = 0; m < q.size(); ++m)
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) g(a, b) += q.weights[m] * rt[a].value(q.points[m]).dot(ned[b].value(q.points[m]));
    return g;
  }();

  Eigen::VectorXd f = Eigen::VectorXd::Zero(d.V().n_dofs);
  for (int t = 0; t < d.mesh().num_triangles(); ++t) {
    const Eigen::VectorXd fl = gather(d.Y(), f_y, t);
    Eigen::Matrix<double, 14, 1> local;
    if (scheme == Scheme::Modified) {
      local = d.reconstruction()[t].transpose() * (rt_ned * fl);
    } else {
      local.setZero();
      const auto& fields = d.v_fields(t);
      for (std::size_t m = 0; m < q.size(); ++m) {
        const RefPoint& x = q.points[m];
        Vec2 fh = Vec2::Zero();
        for (int b = 0; b < 8; ++b) fh += fl(b) * ned[b].value(x);
        for (int i = 0; i < 14; ++i) local(i) += q.weights[m] * fh.dot(fields[i].value(x));
      }
    }
    const auto& map = d.V().local_to_global[t];
    for (int i = 0; i < 14; ++i) f(map[i].dof) += local(i);
  }
  return f;
}

SparseMatrix assemble_pressure_mass(const Discretization& d) {
  // det(DF) is quadratic, so the integrand has degree 4.
  const QuadRule& q = triangle_rule(4);
  const auto& p1 = refelem::p1_basis();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < d.mesh().num_triangles(); ++t) {
    const ElementGeometry& g = d.geometry(t);
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    for (std::size_t m = 0; m < q.size(); ++m) {
      const RefPoint& x = q.points[m];
      const double w = q.weights[m] * g.det(x);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += w * p1[i].value(x) * p1[j].value(x);
    }
    const auto& map = d.Q().local_to_global[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) triplets.emplace_back(map[i].dof, map[j].dof, local(i, j));
  }
  SparseMatrix m(d.Q().n_dofs, d.Q().n_dofs);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace curvedfs

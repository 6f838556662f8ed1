#include "curvedfs/operators.hpp"

#include "curvedfs/quadrature.hpp"

namespace curvedfs {

namespace {

constexpr int kYEdgeDegree = 16;
constexpr int kYInteriorDegree = 12;

// Reference point on local edge i at global arclength fraction s, and the
// reference tangent d x / d s in the global orientation.
RefPoint global_edge_point(int i, int sign, double s) {
  return refelem::edge(i).at(sign > 0 ? s : 1.0 - s);
}

Vec2 global_edge_tangent(int i, int sign) { return sign * refelem::edge(i).tangent(); }

// Invoke fn(t, i) once per global edge, from the lower-numbered incident element.
template <typename Fn>
void for_each_owned_edge(const Mesh& mesh, int t, Fn&& fn) {
  for (int i = 0; i < 3; ++i) {
    const int e = mesh.element_edge(t, i);
    if (mesh.edge(e).tri[0] == t) fn(e, i);
  }
}

}  // namespace

ReconstructionMatrix local_reconstruction_matrix(const ElementGeometry& g) {
  const auto fields = reference_fields(SpaceKind::V, g);
  Eigen::Matrix<double, 12, 14> coeffs;
  for (int j = 0; j < 14; ++j) coeffs.col(j) = refelem::flatten(fields[j]);
  return refelem::rt1_interpolation_matrix() * coeffs;
}

Eigen::VectorXd reconstruct(const Mesh& mesh, const Eigen::VectorXd& v) {
  std::vector<ReconstructionMatrix> local(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) local[t] = local_reconstruction_matrix(geometry_of(mesh, t));
  return reconstruct(mesh, local, v);
}

Eigen::VectorXd reconstruct(const Mesh& mesh, const std::vector<ReconstructionMatrix>& local,
                            const Eigen::VectorXd& v) {
  const Space vs = build_V(mesh);
  const Space rs = build_R(mesh);
  if (v.size() != vs.n_dofs) throw ValidationError("reconstruct: coefficient vector has wrong size");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(rs.n_dofs);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Matrix<double, 8, 1> dofs = local[t] * gather(vs, v, t);
    const auto& map = rs.local_to_global[t];
    for_each_owned_edge(mesh, t, [&](int, int i) {
      for (int k = 0; k < 2; ++k) r(map[2 * i + k].dof) = map[2 * i + k].sign * dofs(2 * i + k);
    });
    r(map[6].dof) = dofs(6);
    r(map[7].dof) = dofs(7);
  }
  return r;
}

Eigen::VectorXd interpolate_Y(const Mesh& mesh, const VectorField& f) {
  const Space ys = build_Y(mesh);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ys.n_dofs);
  const QuadRule& eq = edge_rule(kYEdgeDegree);
  const QuadRule& tq = triangle_rule(kYInteriorDegree);
  const int ne = mesh.num_edges();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry g = geometry_of(mesh, t);
    for_each_owned_edge(mesh, t, [&](int e, int i) {
      const int sign = mesh.edge_sign(t, i);
      const Vec2 tangent = global_edge_tangent(i, sign);
      for (std::size_t m = 0; m < eq.size(); ++m) {
        const double s = eq.points[m].x1;
        const RefPoint xh = global_edge_point(i, sign, s);
        const double ft = f(g.F(xh)).dot(g.DF(xh) * tangent);
        for (int k = 0; k < 2; ++k) y(2 * e + k) += eq.weights[m] * ft * refelem::edge_moment_poly(k, s);
      }
    });
    Vec2 interior = Vec2::Zero();
    for (std::size_t m = 0; m < tq.size(); ++m) {
      const RefPoint& xh = tq.points[m];
      interior += tq.weights[m] * (g.DF(xh).transpose() * f(g.F(xh)));
    }
    y(2 * ne + 2 * t) = interior.x();
    y(2 * ne + 2 * t + 1) = interior.y();
  }
  return y;
}

Eigen::VectorXd interpolate_Sigma(const Mesh& mesh, const ScalarField& p) {
  const int nv = mesh.num_vertices();
  Eigen::VectorXd s(nv + mesh.num_edges());
  for (int v = 0; v < nv; ++v) s(v) = p(mesh.vertex(v));
  const QuadRule& eq = edge_rule(kYEdgeDegree);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry g = geometry_of(mesh, t);
    for_each_owned_edge(mesh, t, [&](int e, int i) {
      double mean = 0.0;
      for (std::size_t m = 0; m < eq.size(); ++m) mean += eq.weights[m] * p(g.F(refelem::edge(i).at(eq.points[m].x1)));
      s(nv + e) = mean;
    });
  }
  return s;
}

Eigen::VectorXd gradient_in_Y(const Mesh& mesh, const Eigen::VectorXd& sigma) {
  const Space ss = build_Sigma(mesh);
  const Space ys = build_Y(mesh);
  if (sigma.size() != ss.n_dofs) throw ValidationError("gradient_in_Y: coefficient vector has wrong size");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ys.n_dofs);
  const auto& basis = refelem::p2_edge_mean_basis();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::VectorXd local = gather(ss, sigma, t);
    refelem::ScalarP2 s;
    for (int j = 0; j < 6; ++j) s.c += local(j) * basis[j].c;
    const refelem::HdivDofs dofs = refelem::ned1_dofs([&](const RefPoint& x) { return s.gradient(x); });
    const auto& map = ys.local_to_global[t];
    for_each_owned_edge(mesh, t, [&](int, int i) {
      for (int k = 0; k < 2; ++k) y(map[2 * i + k].dof) = map[2 * i + k].sign * dofs(2 * i + k);
    });
    y(map[6].dof) = dofs(6);
    y(map[7].dof) = dofs(7);
  }
  return y;
}

Eigen::VectorXd nodal_interpolate_W(const Mesh& mesh, const VectorField& v, bool zero_boundary) {
  const Space ws = build_W(mesh);
  Eigen::VectorXd w(ws.n_dofs);
  const int nv = mesh.num_vertices();
  for (int i = 0; i < nv; ++i) w.segment<2>(2 * i) = v(mesh.vertex(i));
  for (int e = 0; e < mesh.num_edges(); ++e) w.segment<2>(2 * (nv + e)) = v(mesh.midpoint(e));
  if (zero_boundary) {
    for (int d : ws.boundary_dofs) w(d) = 0.0;
  }
  return w;
}

}  // namespace curvedfs

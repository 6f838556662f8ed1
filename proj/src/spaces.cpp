#include "curvedfs/spaces.hpp"

namespace curvedfs {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::W: return "W";
    case SpaceKind::Phi: return "Phi";
    case SpaceKind::V: return "V";
    case SpaceKind::Q: return "Q";
    case SpaceKind::R: return "R";
    case SpaceKind::Y: return "Y";
    case SpaceKind::Sigma: return "Sigma";
  }
  return "?";
}

std::vector<char> Space::boundary_mask() const {
  std::vector<char> mask(n_dofs, 0);
  for (int d : boundary_dofs) mask[d] = 1;
  return mask;
}

namespace {

Space make(SpaceKind kind, const Mesh& mesh, int local_dim) {
  Space s;
  s.kind = kind;
  s.mesh = &mesh;
  s.local_dim = local_dim;
  s.local_to_global.assign(mesh.num_triangles(), std::vector<DofRef>(local_dim));
  return s;
}

// Edge-moment spaces share the layout: 2 per edge, then 2 per element.
Space build_edge_space(SpaceKind kind, const Mesh& mesh) {
  Space s = make(kind, mesh, refelem::kHdivDim);
  const int ne = mesh.num_edges();
  s.n_dofs = 2 * ne + 2 * mesh.num_triangles();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    auto& map = s.local_to_global[t];
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.element_edge(t, i);
      const int sign = mesh.edge_sign(t, i);
      // Reversing the edge flips the normal/tangent and maps 2s-1 to 1-2s.
      map[2 * i] = {2 * e, sign};
      map[2 * i + 1] = {2 * e + 1, 1};
    }
    map[6] = {2 * ne + 2 * t, 1};
    map[7] = {2 * ne + 2 * t + 1, 1};
  }
  return s;
}

}  // namespace

Space build_W(const Mesh& mesh) {
  Space s = make(SpaceKind::W, mesh, 12);
  const int nv = mesh.num_vertices();
  s.n_dofs = 2 * (nv + mesh.num_edges());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int j = 0; j < 6; ++j) {
      const int node = mesh.node_id(t, j);
      for (int c = 0; c < 2; ++c) s.local_to_global[t][2 * j + c] = {2 * node + c, 1};
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      s.boundary_dofs.push_back(2 * v);
      s.boundary_dofs.push_back(2 * v + 1);
    }
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary()) {
      s.boundary_dofs.push_back(2 * (nv + e));
      s.boundary_dofs.push_back(2 * (nv + e) + 1);
    }
  }
  return s;
}

Space build_Phi(const Mesh& mesh) {
  Space s = make(SpaceKind::Phi, mesh, 2);
  s.n_dofs = 2 * mesh.num_triangles();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    s.local_to_global[t][0] = {2 * t, 1};
    s.local_to_global[t][1] = {2 * t + 1, 1};
  }
  return s;
}

Space build_V(const Mesh& mesh) {
  const Space w = build_W(mesh);
  const Space phi = build_Phi(mesh);
  Space s = make(SpaceKind::V, mesh, 14);
  s.n_dofs = w.n_dofs + phi.n_dofs;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < 12; ++i) s.local_to_global[t][i] = w.local_to_global[t][i];
    for (int i = 0; i < 2; ++i) s.local_to_global[t][12 + i] = {w.n_dofs + phi.local_to_global[t][i].dof, 1};
  }
  s.boundary_dofs = w.boundary_dofs;
  return s;
}

Space build_Q(const Mesh& mesh) {
  Space s = make(SpaceKind::Q, mesh, 3);
  s.n_dofs = 3 * mesh.num_triangles();
  s.constraint = Eigen::VectorXd::Zero(s.n_dofs);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.affine_area(t);
    for (int i = 0; i < 3; ++i) {
      s.local_to_global[t][i] = {3 * t + i, 1};
      s.constraint(3 * t + i) = area / 3.0;
    }
  }
  return s;
}

Space build_R(const Mesh& mesh) {
  Space s = build_edge_space(SpaceKind::R, mesh);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary()) {
      s.boundary_dofs.push_back(2 * e);
      s.boundary_dofs.push_back(2 * e + 1);
    }
  }
  return s;
}

Space build_Y(const Mesh& mesh) { return build_edge_space(SpaceKind::Y, mesh); }

Space build_Sigma(const Mesh& mesh) {
  Space s = make(SpaceKind::Sigma, mesh, 6);
  s.n_dofs = mesh.num_vertices() + mesh.num_edges();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int j = 0; j < 6; ++j) s.local_to_global[t][j] = {mesh.node_id(t, j), 1};
  }
  return s;
}

std::vector<refelem::VectorP2> reference_fields(SpaceKind kind, const ElementGeometry& g) {
  std::vector<refelem::VectorP2> out;
  if (kind == SpaceKind::W || kind == SpaceKind::V) {
    const auto& basis = refelem::p2_basis();
    const auto& nodes = refelem::lagrange_nodes();
    for (int j = 0; j < 6; ++j) {
      const Mat2 a_inv = piola_at(g, nodes[j]).A_inv;
      for (int c = 0; c < 2; ++c) out.push_back(refelem::times(basis[j], a_inv.col(c)));
    }
  }
  if (kind == SpaceKind::Phi || kind == SpaceKind::V) {
    out.push_back(refelem::times(refelem::bubble(), Vec2(1.0, 0.0)));
    out.push_back(refelem::times(refelem::bubble(), Vec2(0.0, 1.0)));
  }
  if (kind == SpaceKind::R) {
    const auto& b = refelem::rt1_basis();
    out.assign(b.begin(), b.end());
  }
  if (kind == SpaceKind::Y) {
    const auto& b = refelem::ned1_basis();
    out.assign(b.begin(), b.end());
  }
  if (out.empty()) throw ValidationError(std::string("reference_fields: scalar space ") + to_string(kind));
  return out;
}

LocalEval eval_local(const Space& space, int element, const RefPoint& x) {
  return eval_local(space, geometry_of(*space.mesh, element), x);
}

LocalEval eval_local(const Space& space, const ElementGeometry& g, const RefPoint& x) {
  LocalEval r;
  const PiolaEval pe = piola_at(g, x);
  if (space.is_scalar()) {
    const Mat2 cov = pe.DF_inv.transpose();
    auto push = [&](const refelem::ScalarP2& b) {
      r.scalar_values.push_back(b.value(x));
      r.scalar_gradients.push_back(cov * b.gradient(x));
    };
    if (space.kind == SpaceKind::Q) {
      for (const auto& b : refelem::p1_basis()) push(b);
    } else {
      for (const auto& b : refelem::p2_edge_mean_basis()) push(b);
    }
    return r;
  }

  const auto fields = reference_fields(space.kind, g);
  const bool covariant = space.kind == SpaceKind::Y;
  const Mat2 cov = pe.DF_inv.transpose();
  std::array<Mat2, 2> dcov;
  if (covariant) {
    for (int k = 0; k < 2; ++k) dcov[k] = -cov * g.dDF(k).transpose() * cov;
  }
  for (const auto& f : fields) {
    const Vec2 v = f.value(x);
    const Mat2 jv = f.jacobian(x);
    Mat2 dref;  // derivative of the mapped field with respect to reference coordinates
    Vec2 value;
    if (covariant) {
      value = cov * v;
      for (int k = 0; k < 2; ++k) dref.col(k) = dcov[k] * v + cov * jv.col(k);
    } else {
      value = pe.A * v;
      for (int k = 0; k < 2; ++k) dref.col(k) = pe.dA[k] * v + pe.A * jv.col(k);
    }
    const Mat2 grad = dref * pe.DF_inv;
    r.values.push_back(value);
    r.gradients.push_back(grad);
    r.divergences.push_back(covariant ? grad.trace() : f.divergence(x) / pe.det);
  }
  return r;
}

Eigen::VectorXd gather(const Space& space, const Eigen::VectorXd& coeffs, int element) {
  const auto& map = space.local_to_global[element];
  Eigen::VectorXd local(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) local(i) = map[i].sign * coeffs(map[i].dof);
  return local;
}

Vec2 eval_vector(const Space& space, const Eigen::VectorXd& coeffs, const ElementGeometry& g, const RefPoint& x,
                 Mat2* gradient, double* divergence) {
  const LocalEval le = eval_local(space, g, x);
  const Eigen::VectorXd local = gather(space, coeffs, g.element);
  Vec2 v = Vec2::Zero();
  Mat2 grad = Mat2::Zero();
  double div = 0.0;
  for (int i = 0; i < local.size(); ++i) {
    v += local(i) * le.values[i];
    grad += local(i) * le.gradients[i];
    div += local(i) * le.divergences[i];
  }
  if (gradient) *gradient = grad;
  if (divergence) *divergence = div;
  return v;
}

double eval_scalar(const Space& space, const Eigen::VectorXd& coeffs, const ElementGeometry& g, const RefPoint& x,
                   Vec2* gradient) {
  const LocalEval le = eval_local(space, g, x);
  const Eigen::VectorXd local = gather(space, coeffs, g.element);
  double v = 0.0;
  Vec2 grad = Vec2::Zero();
  for (int i = 0; i < local.size(); ++i) {
    v += local(i) * le.scalar_values[i];
    grad += local(i) * le.scalar_gradients[i];
  }
  if (gradient) *gradient = grad;
  return v;
}

}  // namespace curvedfs

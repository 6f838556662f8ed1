#include "curvedfs/geometry.hpp"

#include "curvedfs/quadrature.hpp"

namespace curvedfs {

Mat2 ElementGeometry::dDF(int k) const {
  // Second derivatives of the monomials {1, x, y, x^2, xy, y^2}.
  static const refelem::Monomials dxx = (refelem::Monomials() << 0, 0, 0, 2, 0, 0).finished();
  static const refelem::Monomials dxy = (refelem::Monomials() << 0, 0, 0, 0, 1, 0).finished();
  static const refelem::Monomials dyy = (refelem::Monomials() << 0, 0, 0, 0, 0, 2).finished();
  Mat2 d;
  if (k == 0) {
    d.col(0) = map.c * dxx;
    d.col(1) = map.c * dxy;
  } else {
    d.col(0) = map.c * dxy;
    d.col(1) = map.c * dyy;
  }
  return d;
}

ElementGeometry geometry_of(const Mesh& mesh, int element) {
  if (element < 0 || element >= mesh.num_triangles())
    throw ValidationError("geometry_of: element id " + std::to_string(element) + " out of range");
  ElementGeometry g;
  g.element = element;
  const auto& tri = mesh.triangle(element);
  for (int i = 0; i < 3; ++i) g.nodes[i] = mesh.vertex(tri[i]);
  for (int i = 0; i < 3; ++i) {
    const int e = mesh.element_edge(element, i);
    g.nodes[3 + i] = mesh.midpoint(e);
    if (mesh.is_curved_edge(e)) g.affine = false;
  }
  const auto& basis = refelem::p2_basis();
  for (int j = 0; j < 6; ++j) g.map += refelem::times(basis[j], g.nodes[j]);
  if (g.affine) {
    // Drop round-off in the quadratic coefficients so DF is exactly constant.
    g.map.c.rightCols<3>().setZero();
  }

  const QuadRule& q = triangle_rule(10);
  for (const RefPoint& p : q.points) {
    if (!(g.det(p) > 0.0)) throw GeometryError(element, "nonpositive Jacobian determinant");
  }
  return g;
}

PiolaEval piola_at(const ElementGeometry& g, const RefPoint& x) {
  PiolaEval r;
  r.DF = g.DF(x);
  r.det = r.DF.determinant();
  if (!(r.det > 0.0)) throw GeometryError(g.element, "nonpositive Jacobian determinant");
  r.DF_inv = r.DF.inverse();
  r.A = r.DF / r.det;
  r.A_inv = r.det * r.DF_inv;
  for (int k = 0; k < 2; ++k) {
    const Mat2 d = g.dDF(k);
    const double dJ = d(0, 0) * r.DF(1, 1) + r.DF(0, 0) * d(1, 1) - d(0, 1) * r.DF(1, 0) - r.DF(0, 1) * d(1, 0);
    r.dA[k] = (d * r.det - r.DF * dJ) / (r.det * r.det);
  }
  return r;
}

Mat2 covariant_at(const ElementGeometry& g, const RefPoint& x) {
  const Mat2 df = g.DF(x);
  if (!(df.determinant() > 0.0)) throw GeometryError(g.element, "nonpositive Jacobian determinant");
  return df.inverse().transpose();
}

double element_area(const ElementGeometry& g) {
  // det(DF) has degree 2.
  const QuadRule& q = triangle_rule(2);
  double a = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) a += q.weights[i] * g.det(q.points[i]);
  return a;
}

}  // namespace curvedfs

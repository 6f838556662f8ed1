#pragma once

#include "curvedfs/mesh.hpp"
#include "curvedfs/refelem.hpp"

#include <array>

namespace curvedfs {

/// Quadratic element map F_T through the six physical nodes
/// (vertices, then edge midpoints in local edge order).
struct ElementGeometry {
  int element = -1;
  std::array<Vec2, 6> nodes;
  refelem::VectorP2 map;  // F_T in monomial coefficients
  bool affine = true;

  Vec2 F(const RefPoint& p) const { return map.value(p); }
  Mat2 DF(const RefPoint& p) const { return map.jacobian(p); }
  double det(const RefPoint& p) const { return DF(p).determinant(); }
  /// d(DF)/dx_k, constant because F_T is quadratic.
  Mat2 dDF(int k) const;
};

struct PiolaEval {
  Mat2 DF;
  Mat2 DF_inv;
  double det = 0.0;
  Mat2 A;      // DF / det
  Mat2 A_inv;  // det * DF^{-1}
  std::array<Mat2, 2> dA;
};

/// Throws GeometryError if det(DF_T) <= 0 at any point of the degree-10 rule.
ElementGeometry geometry_of(const Mesh& mesh, int element);

/// Contravariant Piola data at x. Throws GeometryError for det <= 0.
PiolaEval piola_at(const ElementGeometry& g, const RefPoint& x);

/// DF^{-T}, the covariant transform. Throws GeometryError for det <= 0.
Mat2 covariant_at(const ElementGeometry& g, const RefPoint& x);

/// Integral of det(DF_T) over the reference triangle.
double element_area(const ElementGeometry& g);

}  // namespace curvedfs

#pragma once

// Reference-triangle machinery: P2 Lagrange and Gauss-Legendre bubble,
// lowest-order-plus-one Raviart-Thomas (RT1) and first-kind Nedelec of
// degree 2, all represented in the monomial basis {1, x, y, x^2, xy, y^2}.
//
// Local numbering: vertices 0,1,2 = (0,0),(1,0),(0,1); local edge i is
// opposite vertex i and traversed counterclockwise, from vertex (i+1)%3 to
// vertex (i+2)%3. Midpoint node 3+i sits on edge i.

#include "curvedfs/quadrature.hpp"
#include "curvedfs/types.hpp"

#include <array>
#include <functional>

namespace curvedfs::refelem {

using Monomials = Eigen::Matrix<double, 6, 1>;

/// Scalar polynomial of degree <= 2: value = coeffs . monomials(x).
struct ScalarP2 {
  Monomials c = Monomials::Zero();

  double value(const RefPoint& p) const;
  Vec2 gradient(const RefPoint& p) const;
};

/// Vector polynomial of degree <= 2; row k holds component k.
struct VectorP2 {
  Eigen::Matrix<double, 2, 6> c = Eigen::Matrix<double, 2, 6>::Zero();

  Vec2 value(const RefPoint& p) const;
  /// J(i, k) = d v_i / d x_k.
  Mat2 jacobian(const RefPoint& p) const;
  double divergence(const RefPoint& p) const;

  VectorP2& operator+=(const VectorP2& o) { c += o.c; return *this; }
  friend VectorP2 operator*(double a, const VectorP2& v) { VectorP2 r; r.c = a * v.c; return r; }
};

Monomials monomials(const RefPoint& p);
Monomials monomials_dx(const RefPoint& p);
Monomials monomials_dy(const RefPoint& p);

/// Scalar times constant vector.
VectorP2 times(const ScalarP2& s, const Vec2& v);

// ---------------------------------------------------------------- nodes

const std::array<RefPoint, 3>& vertices();
/// Quadratic Lagrange nodes: vertices, then the midpoint of edge 0, 1, 2.
const std::array<RefPoint, 6>& lagrange_nodes();

struct RefEdge {
  RefPoint start;
  RefPoint end;
  Vec2 tangent() const { return end.vec() - start.vec(); }
  /// Outward normal scaled by the edge length (tangent rotated by -90 degrees).
  Vec2 scaled_normal() const { const Vec2 t = tangent(); return {t.y(), -t.x()}; }
  RefPoint at(double s) const { return RefPoint::from(start.vec() + s * tangent()); }
};

const RefEdge& edge(int i);

/// Edge moment test polynomials in the arclength fraction s: q_0 = 1, q_1 = 2s - 1.
inline double edge_moment_poly(int k, double s) { return k == 0 ? 1.0 : 2.0 * s - 1.0; }

/// The two Gauss-Legendre points per edge, ordered g_1..g_6 (edge 0, 1, 2;
/// parameter (1 - 1/sqrt 3)/2 first).
const std::array<RefPoint, 6>& gauss_legendre_edge_points();

// ---------------------------------------------------------------- P1 / P2

struct P1Eval {
  std::array<double, 3> values;
  std::array<Vec2, 3> gradients;
};
P1Eval p1_eval(const RefPoint& p);
const std::array<ScalarP2, 3>& p1_basis();

struct P2Eval {
  std::array<double, 6> values;
  std::array<Vec2, 6> gradients;
};
P2Eval p2_eval(const RefPoint& p);
const std::array<ScalarP2, 6>& p2_basis();

/// Basis of P2 dual to {vertex values, edge means}; used for Sigma_h.
const std::array<ScalarP2, 6>& p2_edge_mean_basis();

// ---------------------------------------------------------------- bubble

struct BubbleEval {
  double value;
  Vec2 gradient;
};
/// phi(x) = 2 - 3[(1 - x1 - x2)^2 + x1^2 + x2^2].
BubbleEval bubble_eval(const RefPoint& p);
const ScalarP2& bubble();

// ---------------------------------------------------------------- RT1 / NED

inline constexpr int kEdgeDofs = 2;
inline constexpr int kHdivDim = 8;

/// DOF ordering for both RT1 and NED: (edge 0, q0), (edge 0, q1), (edge 1, q0),
/// (edge 1, q1), (edge 2, q0), (edge 2, q1), interior e_1, interior e_2.
using HdivDofs = Eigen::Matrix<double, kHdivDim, 1>;

struct Rt1Eval {
  std::array<Vec2, 8> values;
  std::array<double, 8> divergences;
};
Rt1Eval rt1_ref_basis(const RefPoint& p);
const std::array<VectorP2, 8>& rt1_basis();

std::array<Vec2, 8> ned1_ref_basis(const RefPoint& p);
const std::array<VectorP2, 8>& ned1_basis();

using VectorFn = std::function<Vec2(const RefPoint&)>;

/// Normal-moment DOFs (edges, local CCW parameter) and interior moments.
HdivDofs rt1_dofs(const VectorFn& v, int edge_degree = 4, int interior_degree = 4);
/// Tangential-moment DOFs and interior moments.
HdivDofs ned1_dofs(const VectorFn& v, int edge_degree = 4, int interior_degree = 4);

/// Canonical RT1 interpolation of a P2 vector field, as an 8x12 matrix acting on
/// the column-stacked monomial coefficients (row-major: component 0 then 1).
const Eigen::Matrix<double, 8, 12>& rt1_interpolation_matrix();
HdivDofs interpolate_rt1_ref(const VectorP2& v);

/// Flatten VectorP2 coefficients to the 12-vector used by rt1_interpolation_matrix.
Eigen::Matrix<double, 12, 1> flatten(const VectorP2& v);

}  // namespace curvedfs::refelem

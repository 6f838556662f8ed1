#include "curvedfs/refelem.hpp"

#include <cmath>

namespace curvedfs::refelem {

Monomials monomials(const RefPoint& p) {
  Monomials m;
  m << 1.0, p.x1, p.x2, p.x1 * p.x1, p.x1 * p.x2, p.x2 * p.x2;
  return m;
}

Monomials monomials_dx(const RefPoint& p) {
  Monomials m;
  m << 0.0, 1.0, 0.0, 2.0 * p.x1, p.x2, 0.0;
  return m;
}

Monomials monomials_dy(const RefPoint& p) {
  Monomials m;
  m << 0.0, 0.0, 1.0, 0.0, p.x1, 2.0 * p.x2;
  return m;
}

double ScalarP2::value(const RefPoint& p) const { return c.dot(monomials(p)); }

Vec2 ScalarP2::gradient(const RefPoint& p) const {
  return {c.dot(monomials_dx(p)), c.dot(monomials_dy(p))};
}

Vec2 VectorP2::value(const RefPoint& p) const { return c * monomials(p); }

Mat2 VectorP2::jacobian(const RefPoint& p) const {
  Mat2 j;
  j.col(0) = c * monomials_dx(p);
  j.col(1) = c * monomials_dy(p);
  return j;
}

double VectorP2::divergence(const RefPoint& p) const {
  return c.row(0).dot(monomials_dx(p)) + c.row(1).dot(monomials_dy(p));
}

VectorP2 times(const ScalarP2& s, const Vec2& v) {
  VectorP2 r;
  r.c.row(0) = v.x() * s.c.transpose();
  r.c.row(1) = v.y() * s.c.transpose();
  return r;
}

Eigen::Matrix<double, 12, 1> flatten(const VectorP2& v) {
  Eigen::Matrix<double, 12, 1> out;
  out.head<6>() = v.c.row(0).transpose();
  out.tail<6>() = v.c.row(1).transpose();
  return out;
}

// ---------------------------------------------------------------- nodes

const std::array<RefPoint, 3>& vertices() {
  static const std::array<RefPoint, 3> v{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
  return v;
}

const std::array<RefPoint, 6>& lagrange_nodes() {
  static const std::array<RefPoint, 6> n{
      {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {0.0, 0.5}, {0.5, 0.0}}};
  return n;
}

const RefEdge& edge(int i) {
  static const std::array<RefEdge, 3> edges = [] {
    std::array<RefEdge, 3> e;
    for (int k = 0; k < 3; ++k) e[k] = {vertices()[(k + 1) % 3], vertices()[(k + 2) % 3]};
    return e;
  }();
  return edges.at(i);
}

const std::array<RefPoint, 6>& gauss_legendre_edge_points() {
  static const std::array<RefPoint, 6> pts = [] {
    const double s0 = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
    std::array<RefPoint, 6> g;
    for (int e = 0; e < 3; ++e) {
      g[2 * e] = edge(e).at(s0);
      g[2 * e + 1] = edge(e).at(1.0 - s0);
    }
    return g;
  }();
  return pts;
}

namespace {

// Columns of the inverse of the DOF matrix give coefficients of the dual basis.
template <int N>
std::array<ScalarP2, N> dual_scalar_basis(const Eigen::Matrix<double, N, 6>& dof_of_monomial) {
  static_assert(N == 6);
  const Eigen::Matrix<double, 6, 6> inv = dof_of_monomial.inverse();
  std::array<ScalarP2, N> basis;
  for (int i = 0; i < N; ++i) basis[i].c = inv.col(i);
  return basis;
}

double edge_integral(int e, int degree, const std::function<double(double, const RefPoint&)>& g) {
  const QuadRule& q = edge_rule(degree);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double s = q.points[i].x1;
    sum += q.weights[i] * g(s, edge(e).at(s));
  }
  return sum;
}

Vec2 triangle_integral(int degree, const VectorFn& v) {
  const QuadRule& q = triangle_rule(degree);
  Vec2 sum = Vec2::Zero();
  for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * v(q.points[i]);
  return sum;
}

HdivDofs moment_dofs(const VectorFn& v, bool normal, int edge_degree, int interior_degree) {
  HdivDofs d;
  for (int e = 0; e < 3; ++e) {
    const Vec2 dir = normal ? edge(e).scaled_normal() : edge(e).tangent();
    for (int k = 0; k < kEdgeDofs; ++k) {
      d(2 * e + k) = edge_integral(e, edge_degree, [&](double s, const RefPoint& p) {
        return v(p).dot(dir) * edge_moment_poly(k, s);
      });
    }
  }
  d.tail<2>() = triangle_integral(interior_degree, v);
  return d;
}

std::array<VectorP2, 8> dual_vector_basis(const std::array<VectorP2, 8>& span, bool normal) {
  Eigen::Matrix<double, 8, 8> dofs;
  for (int j = 0; j < 8; ++j)
    dofs.col(j) = moment_dofs([&](const RefPoint& p) { return span[j].value(p); }, normal, 4, 4);
  const Eigen::Matrix<double, 8, 8> inv = dofs.inverse();
  std::array<VectorP2, 8> basis;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) basis[i] += inv(j, i) * span[j];
  }
  return basis;
}

VectorP2 unit_field(int component, int monomial) {
  VectorP2 v;
  v.c(component, monomial) = 1.0;
  return v;
}

}  // namespace

// ---------------------------------------------------------------- P1 / P2

const std::array<ScalarP2, 3>& p1_basis() {
  static const std::array<ScalarP2, 3> b = [] {
    std::array<ScalarP2, 3> r;
    r[0].c << 1, -1, -1, 0, 0, 0;
    r[1].c << 0, 1, 0, 0, 0, 0;
    r[2].c << 0, 0, 1, 0, 0, 0;
    return r;
  }();
  return b;
}

P1Eval p1_eval(const RefPoint& p) {
  P1Eval r;
  for (int i = 0; i < 3; ++i) {
    r.values[i] = p1_basis()[i].value(p);
    r.gradients[i] = p1_basis()[i].gradient(p);
  }
  return r;
}

const std::array<ScalarP2, 6>& p2_basis() {
  static const std::array<ScalarP2, 6> b = [] {
    Eigen::Matrix<double, 6, 6> d;
    for (int i = 0; i < 6; ++i) d.row(i) = monomials(lagrange_nodes()[i]).transpose();
    return dual_scalar_basis<6>(d);
  }();
  return b;
}

P2Eval p2_eval(const RefPoint& p) {
  P2Eval r;
  for (int i = 0; i < 6; ++i) {
    r.values[i] = p2_basis()[i].value(p);
    r.gradients[i] = p2_basis()[i].gradient(p);
  }
  return r;
}

const std::array<ScalarP2, 6>& p2_edge_mean_basis() {
  static const std::array<ScalarP2, 6> b = [] {
    Eigen::Matrix<double, 6, 6> d;
    for (int i = 0; i < 3; ++i) d.row(i) = monomials(vertices()[i]).transpose();
    for (int e = 0; e < 3; ++e) {
      for (int m = 0; m < 6; ++m) {
        d(3 + e, m) = edge_integral(e, 2, [&](double, const RefPoint& p) { return monomials(p)(m); });
      }
    }
    return dual_scalar_basis<6>(d);
  }();
  return b;
}

// ---------------------------------------------------------------- bubble

const ScalarP2& bubble() {
  static const ScalarP2 b = [] {
    ScalarP2 r;
    r.c << -1, 6, 6, -6, -6, -6;
    return r;
  }();
  return b;
}

BubbleEval bubble_eval(const RefPoint& p) {
  const double l1 = 1.0 - p.x1 - p.x2;
  const double value = 2.0 - 3.0 * (l1 * l1 + p.x1 * p.x1 + p.x2 * p.x2);
  const Vec2 grad{6.0 * (1.0 - 2.0 * p.x1 - p.x2), 6.0 * (1.0 - p.x1 - 2.0 * p.x2)};
  return {value, grad};
}

// ---------------------------------------------------------------- RT1 / NED

const std::array<VectorP2, 8>& rt1_basis() {
  static const std::array<VectorP2, 8> b = [] {
    std::array<VectorP2, 8> span;
    for (int m = 0; m < 3; ++m) {
      span[m] = unit_field(0, m);
      span[3 + m] = unit_field(1, m);
    }
    // x * (x, y) and y * (x, y)
    span[6] = unit_field(0, 3);
    span[6] += unit_field(1, 4);
    span[7] = unit_field(0, 4);
    span[7] += unit_field(1, 5);
    return dual_vector_basis(span, true);
  }();
  return b;
}

Rt1Eval rt1_ref_basis(const RefPoint& p) {
  Rt1Eval r;
  for (int i = 0; i < 8; ++i) {
    r.values[i] = rt1_basis()[i].value(p);
    r.divergences[i] = rt1_basis()[i].divergence(p);
  }
  return r;
}

const std::array<VectorP2, 8>& ned1_basis() {
  static const std::array<VectorP2, 8> b = [] {
    std::array<VectorP2, 8> span;
    for (int m = 0; m < 3; ++m) {
      span[m] = unit_field(0, m);
      span[3 + m] = unit_field(1, m);
    }
    // (-xy, x^2) and (-y^2, xy)
    span[6] = -1.0 * unit_field(0, 4);
    span[6] += unit_field(1, 3);
    span[7] = -1.0 * unit_field(0, 5);
    span[7] += unit_field(1, 4);
    return dual_vector_basis(span, false);
  }();
  return b;
}

std::array<Vec2, 8> ned1_ref_basis(const RefPoint& p) {
  std::array<Vec2, 8> r;
  for (int i = 0; i < 8; ++i) r[i] = ned1_basis()[i].value(p);
  return r;
}

HdivDofs rt1_dofs(const VectorFn& v, int edge_degree, int interior_degree) {
  return moment_dofs(v, true, edge_degree, interior_degree);
}

HdivDofs ned1_dofs(const VectorFn& v, int edge_degree, int interior_degree) {
  return moment_dofs(v, false, edge_degree, interior_degree);
}

const Eigen::Matrix<double, 8, 12>& rt1_interpolation_matrix() {
  static const Eigen::Matrix<double, 8, 12> m = [] {
    Eigen::Matrix<double, 8, 12> r;
    for (int col = 0; col < 12; ++col) {
      const VectorP2 u = unit_field(col / 6, col % 6);
      r.col(col) = rt1_dofs([&](const RefPoint& p) { return u.value(p); });
    }
    return r;
  }();
  return m;
}

HdivDofs interpolate_rt1_ref(const VectorP2& v) { return rt1_interpolation_matrix() * flatten(v); }

}  // namespace curvedfs::refelem

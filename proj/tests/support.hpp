#pragma once

#include "curvedfs/geometry.hpp"
#include "curvedfs/spaces.hpp"

#include <random>
#include <vector>

namespace curvedfs::testing {

inline std::vector<RefPoint> random_points(int count, unsigned seed, double margin = 0.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(margin, 1.0);
  std::vector<RefPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double a = u(rng), b = u(rng);
    if (a + b <= 1.0 - margin) pts.push_back({a, b});
  }
  return pts;
}

inline Eigen::VectorXd random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Eigen::VectorXd zero_boundary(const Space& s, Eigen::VectorXd v) {
  for (int d : s.boundary_dofs) v(d) = 0.0;
  return v;
}

/// Newton inverse of F_T starting from the centroid.
inline RefPoint inverse_map(const ElementGeometry& g, const Vec2& x) {
  Vec2 p(1.0 / 3.0, 1.0 / 3.0);
  for (int it = 0; it < 50; ++it) {
    const RefPoint rp = RefPoint::from(p);
    const Vec2 step = g.DF(rp).inverse() * (g.F(rp) - x);
    p -= step;
    if (step.norm() < 1e-15) break;
  }
  return RefPoint::from(p);
}

inline int local_edge_of(const Mesh& m, int t, int e) {
  for (int i = 0; i < 3; ++i)
    if (m.element_edge(t, i) == e) return i;
  return -1;
}

/// Moment of the normal (or tangential) trace of a global field on edge e,
/// seen from triangle t, against q_k in the global lo -> hi parameter.
inline double edge_moment(const Space& s, const Eigen::VectorXd& coeffs, int t, int e, int k, bool normal) {
  const Mesh& m = *s.mesh;
  const ElementGeometry g = geometry_of(m, t);
  const int i = local_edge_of(m, t, e);
  const int sign = m.edge_sign(t, i);
  const refelem::RefEdge& re = refelem::edge(i);
  const QuadRule& q = edge_rule(12);
  double sum = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    const double s_local = q.points[a].x1;
    const double s_global = sign > 0 ? s_local : 1.0 - s_local;
    const RefPoint p = re.at(s_local);
    const Vec2 tangent = sign * (g.DF(p) * re.tangent());
    const Vec2 dir = normal ? Vec2(tangent.y(), -tangent.x()) : tangent;
    sum += q.weights[a] * eval_vector(s, coeffs, g, p).dot(dir) * refelem::edge_moment_poly(k, s_global);
  }
  return sum;
}

}  // namespace curvedfs::testing

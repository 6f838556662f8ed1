#include "curvedfs/spaces.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace curvedfs;

namespace {

const Mesh& disk() {
  static const Mesh m = generate_disk_mesh(3);
  return m;
}

Mesh unit_square() {
  return Mesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}}, {});
}

std::vector<int> curved_elements(const Mesh& m) {
  std::vector<int> out;
  for (int t = 0; t < m.num_triangles(); ++t)
    if (m.is_curved_element(t)) out.push_back(t);
  return out;
}

std::vector<RefPoint> random_points(int count, unsigned seed, double margin = 0.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(margin, 1.0);
  std::vector<RefPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double a = u(rng), b = u(rng);
    if (a + b <= 1.0 - margin) pts.push_back({a, b});
  }
  return pts;
}

RefPoint inverse_map(const ElementGeometry& g, const Vec2& x) {
  Vec2 p(1.0 / 3.0, 1.0 / 3.0);
  for (int it = 0; it < 50; ++it) {
    const RefPoint rp = RefPoint::from(p);
    const Vec2 step = g.DF(rp).inverse() * (g.F(rp) - x);
    p -= step;
    if (step.norm() < 1e-15) break;
  }
  return RefPoint::from(p);
}

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e(i) = 1.0;
  return e;
}

// Side data of global edge e as seen from triangle t: local edge index and
// whether the local CCW direction matches lo -> hi.
int local_edge_of(const Mesh& m, int t, int e) {
  for (int i = 0; i < 3; ++i)
    if (m.element_edge(t, i) == e) return i;
  return -1;
}

// Moment of the normal (or tangential) trace of a global field on edge e,
// seen from triangle t, against q_k in the global lo -> hi parameter.
double edge_moment(const Space& s, const Eigen::VectorXd& coeffs, int t, int e, int k, bool normal) {
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
    const Vec2 tangent = sign * (g.DF(p) * re.tangent());  // dx/ds_global
    const Vec2 dir = normal ? Vec2(tangent.y(), -tangent.x()) : tangent;
    sum += q.weights[a] * eval_vector(s, coeffs, g, p).dot(dir) * refelem::edge_moment_poly(k, s_global);
  }
  return sum;
}

}  // namespace

TEST(Spaces, TwoTriangleSquareW) {
  const Mesh m = unit_square();
  const Space w = build_W(m);
  EXPECT_EQ(w.n_dofs, 2 * (4 + 5));
  EXPECT_EQ(w.n_dofs - static_cast<int>(w.boundary_dofs.size()), 2);
}

TEST(Spaces, DofCounts) {
  const Mesh& m = disk();
  const int nv = m.num_vertices(), ne = m.num_edges(), nt = m.num_triangles();
  EXPECT_EQ(build_W(m).n_dofs, 2 * (nv + ne));
  EXPECT_EQ(build_Phi(m).n_dofs, 2 * nt);
  EXPECT_EQ(build_V(m).n_dofs, 2 * (nv + ne) + 2 * nt);
  EXPECT_EQ(build_Q(m).n_dofs, 3 * nt);
  const Space r = build_R(m);
  EXPECT_EQ(r.n_dofs, 2 * ne + 2 * nt);
  EXPECT_EQ(static_cast<int>(r.boundary_dofs.size()), 2 * m.num_boundary_edges());
  const Space y = build_Y(m);
  EXPECT_EQ(y.n_dofs, 2 * ne + 2 * nt);
  EXPECT_TRUE(y.boundary_dofs.empty());
  const Space sigma = build_Sigma(m);
  EXPECT_EQ(sigma.n_dofs, nv + ne);
  EXPECT_TRUE(sigma.boundary_dofs.empty());
  EXPECT_TRUE(build_Phi(m).boundary_dofs.empty());
}

TEST(Spaces, WUnisolventOnCurvedElements) {
  const Mesh& m = disk();
  const Space w = build_W(m);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t : curved_elements(m)) {
    const ElementGeometry g = geometry_of(m, t);
    Eigen::VectorXd c(12);
    for (int i = 0; i < 12; ++i) c(i) = u(rng);
    for (int j = 0; j < 6; ++j) {
      const LocalEval le = eval_local(w, g, refelem::lagrange_nodes()[j]);
      Vec2 v = Vec2::Zero();
      for (int i = 0; i < 12; ++i) v += c(i) * le.values[i];
      EXPECT_NEAR(v.x(), c(2 * j), 1e-12);
      EXPECT_NEAR(v.y(), c(2 * j + 1), 1e-12);
    }
  }
}

TEST(Spaces, AffineWMatchesClassicalP2) {
  const Mesh& m = disk();
  const Space w = build_W(m);
  int t = 0;
  while (m.is_curved_element(t)) ++t;
  const ElementGeometry g = geometry_of(m, t);
  // Barycentric coordinates of the physical triangle.
  Eigen::Matrix3d vand;
  for (int i = 0; i < 3; ++i) vand.row(i) << 1.0, g.nodes[i].x(), g.nodes[i].y();
  const Eigen::Matrix3d coef = vand.inverse();  // column i: lambda_i = c0 + c1 x + c2 y
  const int pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (const RefPoint& p : random_points(5, 2)) {
    const Vec2 x = g.F(p);
    Eigen::Vector3d lam;
    std::array<Vec2, 3> dlam;
    for (int i = 0; i < 3; ++i) {
      lam(i) = coef(0, i) + coef(1, i) * x.x() + coef(2, i) * x.y();
      dlam[i] = Vec2(coef(1, i), coef(2, i));
    }
    std::array<double, 6> n;
    std::array<Vec2, 6> dn;
    for (int i = 0; i < 3; ++i) {
      n[i] = lam(i) * (2 * lam(i) - 1);
      dn[i] = (4 * lam(i) - 1) * dlam[i];
      const int a = pairs[i][0], b = pairs[i][1];
      n[3 + i] = 4 * lam(a) * lam(b);
      dn[3 + i] = 4 * (lam(a) * dlam[b] + lam(b) * dlam[a]);
    }
    const LocalEval le = eval_local(w, g, p);
    for (int j = 0; j < 6; ++j)
      for (int c = 0; c < 2; ++c) {
        Vec2 expect = Vec2::Zero();
        expect(c) = n[j];
        Mat2 grad = Mat2::Zero();
        grad.row(c) = dn[j].transpose();
        EXPECT_LT((le.values[2 * j + c] - expect).norm(), 1e-13);
        EXPECT_LT((le.gradients[2 * j + c] - grad).cwiseAbs().maxCoeff(), 1e-12);
      }
  }
}

TEST(Spaces, PhiBubbles) {
  const Mesh& m = disk();
  const Space phi = build_Phi(m);
  const QuadRule& q = triangle_rule(4);
  for (int t : curved_elements(m)) {
    const ElementGeometry g = geometry_of(m, t);
    const auto fields = reference_fields(SpaceKind::Phi, g);
    ASSERT_EQ(fields.size(), 2u);
    for (const auto& f : fields)
      for (const RefPoint& gl : refelem::gauss_legendre_edge_points()) EXPECT_LT(f.value(gl).norm(), 1e-13);
    double int0 = 0.0, int1 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const LocalEval le = eval_local(phi, g, q.points[i]);
      const double w = q.weights[i] * g.det(q.points[i]);
      int0 += w * le.divergences[0];
      int1 += w * le.divergences[1];
    }
    EXPECT_NEAR(int0, 0.0, 1e-14);
    EXPECT_NEAR(int1, 0.0, 1e-14);
  }
}

TEST(Spaces, BubbleDivergenceSolvesMeanZeroLinears) {
  const Mesh& m = disk();
  const ElementGeometry g = geometry_of(m, curved_elements(m).front());
  const auto fields = reference_fields(SpaceKind::Phi, g);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto pts = random_points(6, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = u(rng), b = u(rng);
    auto target = [&](const RefPoint& p) { return a * (p.x1 - 1.0 / 3.0) + b * (p.x2 - 1.0 / 3.0); };
    Eigen::MatrixXd sys(pts.size(), 2);
    Eigen::VectorXd rhs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sys(i, 0) = fields[0].divergence(pts[i]);
      sys(i, 1) = fields[1].divergence(pts[i]);
      rhs(i) = target(pts[i]);
    }
    const Eigen::Vector2d c = sys.colPivHouseholderQr().solve(rhs);
    EXPECT_LT((sys * c - rhs).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Spaces, QConstraint) {
  const Mesh ref = Mesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}, {});
  const Space q = build_Q(ref);
  ASSERT_EQ(q.n_dofs, 3);
  EXPECT_NEAR(q.constraint.dot(Eigen::Vector3d::Ones()), 0.5, 1e-15);
  EXPECT_EQ(q.constraint.dot(Eigen::Vector3d::Zero()), 0.0);
  const Mesh& m = disk();
  const Space qd = build_Q(m);
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(qd.constraint(3 * t + i), m.affine_area(t) / 3.0, 1e-15);
}

TEST(Spaces, QValueIgnoresGeometry) {
  const Mesh& m = disk();
  const Space q = build_Q(m);
  const int t = curved_elements(m).front();
  for (const RefPoint& p : random_points(5, 5)) {
    const LocalEval le = eval_local(q, t, p);
    EXPECT_NEAR(le.scalar_values[0], 1.0 - p.x1 - p.x2, 1e-15);
    EXPECT_NEAR(le.scalar_values[1], p.x1, 1e-15);
    EXPECT_NEAR(le.scalar_values[2], p.x2, 1e-15);
  }
}

TEST(Spaces, RNormalMomentsSingleValued) {
  const Mesh& m = disk();
  const Space r = build_R(m);
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& ed = m.edge(e);
    if (ed.boundary()) continue;
    for (int k = 0; k < 2; ++k) {
      // Every global basis function touching this edge.
      for (int t : ed.tri)
        for (const DofRef& d : r.local_to_global[t]) {
          const Eigen::VectorXd c = unit(r.n_dofs, d.dof);
          const double a = edge_moment(r, c, ed.tri[0], e, k, true);
          const double b = edge_moment(r, c, ed.tri[1], e, k, true);
          ASSERT_NEAR(a, b, 1e-12) << "edge " << e << " dof " << d.dof;
        }
    }
  }
}

TEST(Spaces, REdgeDofIsNormalMoment) {
  const Mesh& m = disk();
  const Space r = build_R(m);
  const int e = 5;
  const int t = m.edge(e).tri[0];
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(edge_moment(r, unit(r.n_dofs, 2 * e + j), t, e, k, true), j == k ? 1.0 : 0.0, 1e-12);
}

TEST(Spaces, YTangentialMomentsSingleValued) {
  const Mesh& m = disk();
  const Space y = build_Y(m);
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(y.n_dofs);
  for (int i = 0; i < y.n_dofs; ++i) c(i) = u(rng);
  int checked = 0;
  for (int e = 0; e < m.num_edges(); e += 7) {
    const MeshEdge& ed = m.edge(e);
    if (ed.boundary()) continue;
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(edge_moment(y, c, ed.tri[0], e, k, false), edge_moment(y, c, ed.tri[1], e, k, false), 1e-12);
      EXPECT_NEAR(edge_moment(y, c, ed.tri[0], e, k, false), c(2 * e + k), 1e-12);
    }
    ++checked;
  }
  EXPECT_GT(checked, 3);
}

TEST(Spaces, SigmaGradientsLieInY) {
  const Mesh& m = disk();
  const Space y = build_Y(m);
  const Space sigma = build_Sigma(m);
  const auto pts = random_points(20, 7);
  for (int t : {0, curved_elements(m).front(), curved_elements(m).back()}) {
    const ElementGeometry g = geometry_of(m, t);
    Eigen::MatrixXd basis(2 * pts.size(), 8);
    std::vector<LocalEval> sig;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const LocalEval le = eval_local(y, g, pts[i]);
      for (int k = 0; k < 8; ++k) basis.block<2, 1>(2 * i, k) = le.values[k];
      sig.push_back(eval_local(sigma, g, pts[i]));
    }
    const auto qr = basis.colPivHouseholderQr();
    for (int j = 0; j < 6; ++j) {
      Eigen::VectorXd target(2 * pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) target.segment<2>(2 * i) = sig[i].scalar_gradients[j];
      const Eigen::VectorXd coef = qr.solve(target);
      EXPECT_LT((basis * coef - target).norm(), 1e-12) << "element " << t << " function " << j;
    }
  }
}

TEST(Spaces, SigmaContinuous) {
  const Mesh& m = disk();
  const Space sigma = build_Sigma(m);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(sigma.n_dofs);
  for (int i = 0; i < sigma.n_dofs; ++i) c(i) = u(rng);
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& ed = m.edge(e);
    if (ed.boundary()) continue;
    const ElementGeometry g0 = geometry_of(m, ed.tri[0]), g1 = geometry_of(m, ed.tri[1]);
    const int i0 = local_edge_of(m, ed.tri[0], e);
    const RefPoint p0 = refelem::edge(i0).at(0.3);
    const RefPoint p1 = inverse_map(g1, g0.F(p0));
    EXPECT_NEAR(eval_scalar(sigma, c, g0, p0), eval_scalar(sigma, c, g1, p1), 1e-12);
  }
}

TEST(Spaces, CurvedGradientsMatchFiniteDifferences) {
  const Mesh& m = disk();
  const Space v = build_V(m);
  const Space y = build_Y(m);
  const int t = curved_elements(m).front();
  const ElementGeometry g = geometry_of(m, t);
  const double h = 1e-5;
  for (const Space* s : {&v, &y}) {
    for (const RefPoint& p : random_points(4, 9, 0.05)) {
      const LocalEval le = eval_local(*s, g, p);
      const Vec2 x = g.F(p);
      for (std::size_t i = 0; i < le.values.size(); ++i) {
        auto f = [&](const Vec2& xx) { return eval_local(*s, g, inverse_map(g, xx)).values[i]; };
        Mat2 fd;
        fd.col(0) = (f(x + Vec2(h, 0)) - f(x - Vec2(h, 0))) / (2 * h);
        fd.col(1) = (f(x + Vec2(0, h)) - f(x - Vec2(0, h))) / (2 * h);
        EXPECT_LT((fd - le.gradients[i]).cwiseAbs().maxCoeff(), 1e-5) << to_string(s->kind) << " " << i;
        if (s->kind == SpaceKind::V) {
          EXPECT_NEAR(le.divergences[i], le.gradients[i].trace(), 1e-12);
        }
      }
    }
  }
}

TEST(Spaces, VMassMatrixPositiveDefinite) {
  const Mesh m = generate_disk_mesh(2);
  const Space v = build_V(m);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(v.n_dofs, v.n_dofs);
  const QuadRule& q = triangle_rule(10);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const ElementGeometry g = geometry_of(m, t);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const LocalEval le = eval_local(v, g, q.points[k]);
      const double w = q.weights[k] * g.det(q.points[k]);
      const auto& map = v.local_to_global[t];
      for (std::size_t a = 0; a < map.size(); ++a)
        for (std::size_t b = 0; b < map.size(); ++b)
          mass(map[a].dof, map[b].dof) += w * map[a].sign * map[b].sign * le.values[a].dot(le.values[b]);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mass, Eigen::EigenvaluesOnly);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 1e-10);
}

TEST(Spaces, VContinuousAtGaussPointsOfAffineEdges) {
  const Mesh& m = disk();
  const Space v = build_V(m);
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(v.n_dofs);
  for (int i = 0; i < v.n_dofs; ++i) c(i) = u(rng);
  const double s0 = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
  int checked = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& ed = m.edge(e);
    if (ed.boundary() || m.is_curved_element(ed.tri[0]) || m.is_curved_element(ed.tri[1])) continue;
    const ElementGeometry g0 = geometry_of(m, ed.tri[0]), g1 = geometry_of(m, ed.tri[1]);
    const refelem::RefEdge& re = refelem::edge(local_edge_of(m, ed.tri[0], e));
    for (double s : {s0, 1.0 - s0}) {
      const RefPoint p0 = re.at(s);
      const RefPoint p1 = inverse_map(g1, g0.F(p0));
      EXPECT_LT((eval_vector(v, c, g0, p0) - eval_vector(v, c, g1, p1)).norm(), 1e-12);
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Spaces, BoundaryMask) {
  const Space w = build_W(disk());
  const auto mask = w.boundary_mask();
  int count = 0;
  for (char c : mask) count += c;
  EXPECT_EQ(count, static_cast<int>(w.boundary_dofs.size()));
}

#include "curvedfs/infsup.hpp"

#include "curvedfs/assembly.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace curvedfs {

double infsup_constant(const Mesh& mesh, const InfSupOptions& options) {
  const Discretization d(mesh);
  const SparseMatrix A = assemble_viscous(d, options.quad_a_degree);
  const SparseMatrix B = assemble_div(d);
  const Space& V = d.V();
  const Space& Q = d.Q();
  const int n_w = V.n_dofs - 2 * mesh.num_triangles();

  // Velocity unknowns: non-Dirichlet W DOFs, plus the bubbles unless ablated.
  const std::vector<char> fixed = V.boundary_mask();
  std::vector<int> keep;
  for (int i = 0; i < V.n_dofs; ++i) {
    if (fixed[i]) continue;
    if (options.drop_bubbles && i >= n_w) continue;
    keep.push_back(i);
  }
  const int nq = Q.n_dofs;
  if (keep.empty()) throw SolverError("inf-sup: no free velocity degrees of freedom");
  if (nq < 2) throw SolverError("inf-sup: no admissible pressures");

  SparseMatrix P(V.n_dofs, keep.size());
  {
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t j = 0; j < keep.size(); ++j) t.emplace_back(keep[j], static_cast<int>(j), 1.0);
    P.setFromTriplets(t.begin(), t.end());
  }
  const SparseMatrix Af = P.transpose() * A * P;
  const SparseMatrix Bf = B * P;
  const SparseMatrix BfT = Bf.transpose();

  Eigen::SimplicialLDLT<SparseMatrix> chol(Af);
  if (chol.info() != Eigen::Success) throw SolverError("inf-sup: velocity stiffness factorization failed");

  // Schur complement S = Bf Af^{-1} Bf^T, formed in column blocks.
  Eigen::MatrixXd S(nq, nq);
  constexpr int kBlock = 256;
  for (int c0 = 0; c0 < nq; c0 += kBlock) {
    const int nc = std::min(kBlock, nq - c0);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(BfT.middleCols(c0, nc));
    const Eigen::MatrixXd x = chol.solve(rhs);
    S.middleCols(c0, nc) = Bf * x;
  }

  // The pressure mass matrix is block diagonal (3x3 per element): apply M^{-1/2}.
  const SparseMatrix M = assemble_pressure_mass(d);
  Eigen::VectorXd ell = Q.constraint;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Matrix3d block = Eigen::Matrix3d(M.block(3 * t, 3 * t, 3, 3));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(block);
    const Eigen::Matrix3d inv_sqrt = es.operatorInverseSqrt();
    S.middleRows(3 * t, 3) = inv_sqrt * S.middleRows(3 * t, 3);
    S.middleCols(3 * t, 3) = S.middleCols(3 * t, 3) * inv_sqrt;
    ell.segment<3>(3 * t) = inv_sqrt * ell.segment<3>(3 * t);
  }

  // Householder reflection sending ell to a multiple of e_1; the admissible
  // subspace is then spanned by the remaining coordinates.
  ell.normalize();
  Eigen::VectorXd w = ell;
  w(0) += (ell(0) >= 0.0 ? 1.0 : -1.0);
  w.normalize();
  const Eigen::VectorXd Sw = S * w;
  const double wSw = w.dot(Sw);
  S.noalias() -= 2.0 * w * Sw.transpose();
  S.noalias() -= 2.0 * Sw * w.transpose();
  S.noalias() += 4.0 * wSw * w * w.transpose();

  const Eigen::MatrixXd reduced = S.bottomRightCorner(nq - 1, nq - 1);
  S.resize(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("inf-sup: eigenvalue computation failed");
  const double lambda_min = es.eigenvalues()(0);
  return std::sqrt(std::max(lambda_min, 0.0));
}

}  // namespace curvedfs

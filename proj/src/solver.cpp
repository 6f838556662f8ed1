#include "curvedfs/solver.hpp"

#include <Eigen/UmfPackSupport>

#include <chrono>
#include <cmath>
#include <sstream>

namespace curvedfs {

struct StokesSolver::Factorization {
  Eigen::UmfPackLU<SparseMatrix> lu;
};

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// b - K x accumulated in extended precision, so refinement can recover
// digits lost to the large velocity scale at small viscosity.
Eigen::VectorXd extended_residual(const SparseMatrix& K, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  std::vector<long double> acc(b.data(), b.data() + b.size());
  for (int col = 0; col < K.outerSize(); ++col) {
    const long double xc = x(col);
    for (SparseMatrix::InnerIterator it(K, col); it; ++it) acc[it.row()] -= static_cast<long double>(it.value()) * xc;
  }
  Eigen::VectorXd r(b.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = static_cast<double>(acc[i]);
  return r;
}

}  // namespace

StokesOperators assemble_operators(const Discretization& d, int quad_a_degree) {
  StokesOperators ops;
  ops.A = assemble_viscous(d, quad_a_degree);
  ops.B = assemble_div(d);
  ops.quad_a_degree = quad_a_degree;
  return ops;
}

StokesSolver::StokesSolver(const Discretization& d, const StokesOperators& ops, double nu) : d_(d), nu_(nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    std::ostringstream msg;
    msg << "viscosity must be positive, got " << nu;
    throw ValidationError(msg.str());
  }
  const auto start = std::chrono::steady_clock::now();
  const Space& V = d.V();
  const Space& Q = d.Q();
  const std::vector<char> fixed = V.boundary_mask();
  std::vector<int> index(V.n_dofs, -1);
  for (int i = 0; i < V.n_dofs; ++i) {
    if (!fixed[i]) {
      index[i] = static_cast<int>(free_.size());
      free_.push_back(i);
    }
  }
  const int nf = static_cast<int>(free_.size());
  const int nq = Q.n_dofs;
  const int n = nf + nq + 1;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(ops.A.nonZeros() + 2 * ops.B.nonZeros() + 2 * nq);
  for (int col = 0; col < ops.A.outerSize(); ++col) {
    if (index[col] < 0) continue;
    for (SparseMatrix::InnerIterator it(ops.A, col); it; ++it) {
      if (index[it.row()] < 0) continue;
      triplets.emplace_back(index[it.row()], index[col], nu * it.value());
    }
  }
  for (int col = 0; col < ops.B.outerSize(); ++col) {
    if (index[col] < 0) continue;
    for (SparseMatrix::InnerIterator it(ops.B, col); it; ++it) {
      triplets.emplace_back(nf + it.row(), index[col], it.value());
      triplets.emplace_back(index[col], nf + it.row(), it.value());
    }
  }
  for (int i = 0; i < nq; ++i) {
    triplets.emplace_back(nf + i, n - 1, Q.constraint(i));
    triplets.emplace_back(n - 1, nf + i, Q.constraint(i));
  }
  K_.resize(n, n);
  K_.setFromTriplets(triplets.begin(), triplets.end());
  K_.makeCompressed();

  lu_ = std::make_unique<Factorization>();
  // The bordered matrix is symmetric; the symmetric strategy pivots on the
  // diagonal where possible and factors several times faster than the default.
  lu_->lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
  lu_->lu.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_AMD;
  lu_->lu.compute(K_);
  if (lu_->lu.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "saddle-point factorization failed (" << d.mesh().num_triangles() << " elements, nu = " << nu << ")";
    throw SolverError(msg.str());
  }
  factor_seconds_ = seconds_since(start);
}

StokesSolver::~StokesSolver() = default;

StokesSolution StokesSolver::solve(const Eigen::VectorXd& rhs, Scheme scheme) const {
  const auto start = std::chrono::steady_clock::now();
  const int nf = static_cast<int>(free_.size());
  const int nq = d_.Q().n_dofs;
  if (rhs.size() != d_.V().n_dofs) throw ValidationError("solve: right-hand side has wrong size");

  Eigen::VectorXd b = Eigen::VectorXd::Zero(K_.rows());
  for (int i = 0; i < nf; ++i) b(i) = rhs(free_[i]);

  Eigen::VectorXd x = lu_->lu.solve(b);
  for (int it = 0; it < 3; ++it) x += lu_->lu.solve(extended_residual(K_, x, b));
  const double bnorm = b.norm();
  const double rnorm = extended_residual(K_, x, b).norm();
  const double residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  if (!std::isfinite(residual) || residual > kResidualTolerance) {
    std::ostringstream msg;
    msg << "relative residual " << residual << " exceeds " << kResidualTolerance << " ("
        << d_.mesh().num_triangles() << " elements, nu = " << nu_ << ")";
    throw SolverError(msg.str());
  }

  StokesSolution sol;
  sol.u = Eigen::VectorXd::Zero(d_.V().n_dofs);
  for (int i = 0; i < nf; ++i) sol.u(free_[i]) = x(i);
  sol.p = x.segment(nf, nq);
  sol.multiplier = x(nf + nq);
  sol.scheme = scheme;
  sol.nu = nu_;
  sol.residual = residual;
  sol.factor_seconds = factor_seconds_;
  sol.solve_seconds = seconds_since(start);
  return sol;
}

StokesSolution solve_stokes(const Discretization& d, double nu, Scheme scheme, const VectorField& f,
                            int quad_a_degree) {
  const StokesOperators ops = assemble_operators(d, quad_a_degree);
  const StokesSolver solver(d, ops, nu);
  const Eigen::VectorXd fy = interpolate_Y(d.mesh(), f);
  return solver.solve(assemble_rhs(d, fy, scheme), scheme);
}

}  // namespace curvedfs

#pragma once

#include "curvedfs/assembly.hpp"

#include <memory>

namespace curvedfs {

struct StokesSolution {
  Eigen::VectorXd u;  // V_h coefficients (boundary DOFs are zero)
  Eigen::VectorXd p;  // Q_h coefficients, L.p = 0
  double multiplier = 0.0;
  Scheme scheme = Scheme::Standard;
  double nu = 1.0;
  double residual = 0.0;  // relative algebraic residual of the bordered system
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Mesh-level operators shared by every viscosity and scheme.
struct StokesOperators {
  SparseMatrix A;  // unit-viscosity form on all of V_h
  SparseMatrix B;  // Q_h x V_h
  int quad_a_degree = 10;
};

StokesOperators assemble_operators(const Discretization& d, int quad_a_degree = 10);

/// Factorization of the bordered saddle-point system
///   [ nu A_ff  B_f^T  0 ] [u_f]   [F_f]
///   [ B_f      0      L ] [p  ] = [ 0 ]
///   [ 0        L^T    0 ] [lam]   [ 0 ]
/// where _f restricts to the non-Dirichlet V_h DOFs.
class StokesSolver {
 public:
  /// Throws ValidationError for nu <= 0 and SolverError if the factorization fails.
  StokesSolver(const Discretization& d, const StokesOperators& ops, double nu);
  ~StokesSolver();

  /// Solve with a right-hand side over V_h (boundary entries ignored).
  /// Throws SolverError if the relative residual exceeds 1e-11.
  StokesSolution solve(const Eigen::VectorXd& rhs, Scheme scheme) const;

  int system_size() const { return static_cast<int>(K_.rows()); }

 private:
  const Discretization& d_;
  double nu_;
  std::vector<int> free_;  // V_h DOF of each free unknown
  SparseMatrix K_;
  struct Factorization;
  std::unique_ptr<Factorization> lu_;
  double factor_seconds_ = 0.0;
};

inline constexpr double kResidualTolerance = 1e-11;

/// Assemble, factor and solve with f_h = Pi_h^Y f.
StokesSolution solve_stokes(const Discretization& d, double nu, Scheme scheme, const VectorField& f,
                            int quad_a_degree = 10);

}  // namespace curvedfs

#pragma once

#include "curvedfs/geometry.hpp"
#include "curvedfs/mesh.hpp"
#include "curvedfs/operators.hpp"
#include "curvedfs/spaces.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace curvedfs {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Scheme { Standard, Modified };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

/// Spaces and per-element data for the Stokes discretization on one mesh.
/// Holds a pointer to `mesh`, which must outlive this object.
class Discretization {
 public:
  explicit Discretization(const Mesh& mesh);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const Mesh& mesh() const { return *mesh_; }
  const Space& V() const { return V_; }
  const Space& Q() const { return Q_; }
  const Space& R() const { return R_; }
  const Space& Y() const { return Y_; }
  const Space& Sigma() const { return Sigma_; }
  const ElementGeometry& geometry(int t) const { return geometry_[t]; }
  /// Reference polynomials of the 14 local V shape functions.
  const std::vector<refelem::VectorP2>& v_fields(int t) const { return v_fields_[t]; }
  const std::vector<ReconstructionMatrix>& reconstruction() const { return reconstruction_; }

 private:
  const Mesh* mesh_;
  Space V_, Q_, R_, Y_, Sigma_;
  std::vector<ElementGeometry> geometry_;
  std::vector<std::vector<refelem::VectorP2>> v_fields_;
  std::vector<ReconstructionMatrix> reconstruction_;
};

/// Unit-viscosity broken H1 form on the full V_h (boundary DOFs included),
/// integrated with a triangle rule of the given degree.
SparseMatrix assemble_viscous(const Discretization& d, int quad_degree = 10);

/// B(i, j) = -int_T q_i div v_j, rows over Q_h, columns over V_h. Exact.
SparseMatrix assemble_div(const Discretization& d);

/// Right-hand side over V_h for f_h given by Y_h coefficients. Exact.
Eigen::VectorXd assemble_rhs(const Discretization& d, const Eigen::VectorXd& f_y, Scheme scheme);

/// Q_h mass matrix (physical L2 inner product).
SparseMatrix assemble_pressure_mass(const Discretization& d);

}  // namespace curvedfs

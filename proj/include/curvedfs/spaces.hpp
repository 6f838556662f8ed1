#pragma once

#include "curvedfs/geometry.hpp"
#include "curvedfs/mesh.hpp"
#include "curvedfs/refelem.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace curvedfs {

enum class SpaceKind { W, Phi, V, Q, R, Y, Sigma };

const char* to_string(SpaceKind kind);

struct DofRef {
  int dof = -1;
  int sign = 1;
};

/// Global finite-element space: DOF map, Dirichlet set, optional constraint.
///
/// Local shape functions returned by eval_local are unsigned; the global
/// basis function restricted to an element is sign * local function.
///
/// Local numbering:
///   W      12 DOFs, index 2j+c = component c of the value at Lagrange node j
///   Phi    2 DOFs, coefficients of A_T(phi,0) and A_T(0,phi)
///   V      W (12) followed by Phi (2)
///   Q      3 DOFs, values of the reference P1 function at the vertices
///   R, Y   8 DOFs in the reference RT1 / Nedelec order
///   Sigma  6 DOFs, vertex values then edge means
struct Space {
  SpaceKind kind = SpaceKind::W;
  const Mesh* mesh = nullptr;
  int n_dofs = 0;
  int local_dim = 0;
  std::vector<std::vector<DofRef>> local_to_global;
  std::vector<int> boundary_dofs;
  /// Qh only: L with L.q = sum_T 2|T~| int_ref q dx.
  Eigen::VectorXd constraint;

  bool is_scalar() const { return kind == SpaceKind::Q || kind == SpaceKind::Sigma; }
  /// Boolean mask over global DOFs marking boundary_dofs.
  std::vector<char> boundary_mask() const;
};

Space build_W(const Mesh& mesh);
Space build_Phi(const Mesh& mesh);
/// W DOFs first, Phi DOFs offset by W.n_dofs.
Space build_V(const Mesh& mesh);
Space build_Q(const Mesh& mesh);
Space build_R(const Mesh& mesh);
Space build_Y(const Mesh& mesh);
Space build_Sigma(const Mesh& mesh);

/// Reference-coordinate representation of the local W / Phi / V shape
/// functions on one element: the physical field is A_T(x) times the returned
/// polynomial (14 entries for V: W first, then Phi).
std::vector<refelem::VectorP2> reference_fields(SpaceKind kind, const ElementGeometry& g);

struct LocalEval {
  // Vector-valued families.
  std::vector<Vec2> values;
  std::vector<Mat2> gradients;  // (i, k) = d v_i / d x_k
  std::vector<double> divergences;
  // Scalar families.
  std::vector<double> scalar_values;
  std::vector<Vec2> scalar_gradients;
};

/// Physical values and gradients of the local shape functions at F_T(x).
LocalEval eval_local(const Space& space, int element, const RefPoint& x);
LocalEval eval_local(const Space& space, const ElementGeometry& g, const RefPoint& x);

/// Evaluate a global function with coefficients `coeffs` at F_T(x).
Vec2 eval_vector(const Space& space, const Eigen::VectorXd& coeffs, const ElementGeometry& g, const RefPoint& x,
                 Mat2* gradient = nullptr, double* divergence = nullptr);
double eval_scalar(const Space& space, const Eigen::VectorXd& coeffs, const ElementGeometry& g, const RefPoint& x,
                   Vec2* gradient = nullptr);

/// Signed local coefficients of a global vector on one element.
Eigen::VectorXd gather(const Space& space, const Eigen::VectorXd& coeffs, int element);

}  // namespace curvedfs

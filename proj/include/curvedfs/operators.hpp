#pragma once

#include "curvedfs/geometry.hpp"
#include "curvedfs/mesh.hpp"
#include "curvedfs/spaces.hpp"

#include <Eigen/Dense>

#include <functional>

namespace curvedfs {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

using ReconstructionMatrix = Eigen::Matrix<double, 8, 14>;

/// Maps the 14 local V coefficients of one element to the 8 local RT1 DOFs
/// of its canonical interpolant (local orientation).
ReconstructionMatrix local_reconstruction_matrix(const ElementGeometry& g);

/// Velocity reconstruction Pi_h: V_h -> R_h. Edge DOFs are taken from the
/// lower-numbered incident element.
Eigen::VectorXd reconstruct(const Mesh& mesh, const Eigen::VectorXd& v);
Eigen::VectorXd reconstruct(const Mesh& mesh, const std::vector<ReconstructionMatrix>& local,
                            const Eigen::VectorXd& v);

/// Canonical Nedelec interpolation of the covariant pullback of f.
Eigen::VectorXd interpolate_Y(const Mesh& mesh, const VectorField& f);

/// Canonical P2 interpolation into Sigma_h: vertex values and edge means
/// of p along the mapped edge (reference arclength fraction).
Eigen::VectorXd interpolate_Sigma(const Mesh& mesh, const ScalarField& p);

/// Y_h coefficients of grad(sigma) for sigma in Sigma_h (exact, since the
/// covariant map sends reference gradients into the Nedelec space).
Eigen::VectorXd gradient_in_Y(const Mesh& mesh, const Eigen::VectorXd& sigma);

/// Physical nodal values of v at mapped P2 nodes. When `zero_boundary` is
/// set the boundary DOFs are overwritten with zero.
Eigen::VectorXd nodal_interpolate_W(const Mesh& mesh, const VectorField& v, bool zero_boundary = true);

}  // namespace curvedfs

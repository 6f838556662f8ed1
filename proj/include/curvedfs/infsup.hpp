#pragma once

#include "curvedfs/mesh.hpp"

namespace curvedfs {

struct InfSupOptions {
  /// Drop the bubble space Phi_h and use W_h alone as the velocity space.
  bool drop_bubbles = false;
  int quad_a_degree = 10;
};

/// Discrete inf-sup constant: square root of the smallest eigenvalue of
/// B A^{-1} B^T against the Q_h mass matrix on {q : L.q = 0}. Dense, so
/// intended for small meshes. Throws SolverError when there is no free
/// velocity DOF or no admissible pressure.
double infsup_constant(const Mesh& mesh, const InfSupOptions& options = {});

}  // namespace curvedfs

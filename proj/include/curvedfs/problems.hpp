#pragma once

#include "curvedfs/operators.hpp"
#include "curvedfs/polynomial.hpp"

#include <functional>
#include <string>

namespace curvedfs {

using TensorField = std::function<Mat2(const Vec2&)>;

/// Manufactured Stokes problem with polynomial data.
struct Problem {
  std::string name;
  double nu = 1.0;
  VectorField u;
  TensorField grad_u;  // (i, k) = d u_i / d x_k
  ScalarField p;
  VectorField f;       // -nu Lap u + grad p
};

/// "noflow": f = grad psi with psi = 2 x^2 (1-x) y (1-y); u = 0, p = psi.
/// "flow": u = curl psi with psi = (1 - x^2 - y^2)^2 / 100 (vanishes on the
/// unit circle) and p = 2 x^2 (1-x) y (1-y). With `square_psi` the flow
/// streamfunction is x^2 (1-x)^2 y^2 (1-y)^2 / 100 instead, whose velocity
/// does not vanish on the circle. Throws ValidationError for other names.
Problem make_problem(const std::string& name, double nu, bool square_psi = false);

}  // namespace curvedfs

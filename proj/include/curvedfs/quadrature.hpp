#pragma once

#include "curvedfs/types.hpp"

#include <vector>

namespace curvedfs {

enum class QuadDomain { Triangle, Edge };

/// Quadrature on the reference triangle (weights sum to 1/2) or on the
/// unit interval [0,1] (weights sum to 1). Edge rules store the parameter
/// s in points[i].x1 and leave x2 = 0.
struct QuadRule {
  QuadDomain domain = QuadDomain::Triangle;
  std::vector<RefPoint> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxTriangleDegree = 12;
inline constexpr int kMaxEdgeDegree = 16;

/// Positive-weight rule exact for polynomials of total degree <= `degree`.
/// Triangle rules are collapsed Gauss-Legendre products; edge rules are
/// Gauss-Legendre. Throws ValidationError for unsupported degrees.
const QuadRule& quad_rule(QuadDomain domain, int degree);

inline const QuadRule& triangle_rule(int degree) { return quad_rule(QuadDomain::Triangle, degree); }
inline const QuadRule& edge_rule(int degree) { return quad_rule(QuadDomain::Edge, degree); }

/// Gauss-Legendre nodes/weights on [0,1] with `n` points.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace curvedfs

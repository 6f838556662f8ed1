#include "curvedfs/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace curvedfs {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm1 = n > 1 ? std::legendre(n - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(n, x);
      const double pm1 = n > 1 ? std::legendre(n - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; store in ascending order.
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 0.5 * w;
  }
}

namespace {

QuadRule make_edge_rule(int degree) {
  const int n = degree / 2 + 1;
  QuadRule rule;
  rule.domain = QuadDomain::Edge;
  std::vector<double> s, w;
  gauss_legendre_01(n, s, w);
  for (int i = 0; i < n; ++i) {
    rule.points.push_back({s[i], 0.0});
    rule.weights.push_back(w[i]);
  }
  rule.exact_degree = 2 * n - 1;
  return rule;
}

// Collapsed (Duffy) product rule: x1 = u, x2 = v (1 - u), dx = (1 - u) du dv.
QuadRule make_triangle_rule(int degree) {
  const int nu = (degree + 1) / 2 + 1;  // integrand degree in u is degree + 1
  const int nv = degree / 2 + 1;
  std::vector<double> su, wu, sv, wv;
  gauss_legendre_01(nu, su, wu);
  gauss_legendre_01(nv, sv, wv);
  QuadRule rule;
  rule.domain = QuadDomain::Triangle;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      rule.points.push_back({su[i], sv[j] * (1.0 - su[i])});
      rule.weights.push_back(wu[i] * wv[j] * (1.0 - su[i]));
    }
  }
  rule.exact_degree = std::min(2 * nu - 2, 2 * nv - 1);
  return rule;
}

}  // namespace

const QuadRule& quad_rule(QuadDomain domain, int degree) {
  static const auto edge_rules = [] {
    std::array<QuadRule, kMaxEdgeDegree + 1> rules;
    for (int d = 0; d <= kMaxEdgeDegree; ++d) rules[d] = make_edge_rule(d);
    return rules;
  }();
  static const auto triangle_rules = [] {
    std::array<QuadRule, kMaxTriangleDegree + 1> rules;
    for (int d = 0; d <= kMaxTriangleDegree; ++d) rules[d] = make_triangle_rule(d);
    return rules;
  }();

  if (degree < 0) throw ValidationError("quad_rule: negative degree " + std::to_string(degree));
  if (domain == QuadDomain::Edge) {
    if (degree > kMaxEdgeDegree)
      throw ValidationError("quad_rule: edge degree " + std::to_string(degree) + " > " +
                            std::to_string(kMaxEdgeDegree) + " not supported");
    return edge_rules[degree];
  }
  if (degree > kMaxTriangleDegree)
    throw ValidationError("quad_rule: triangle degree " + std::to_string(degree) + " > " +
                          std::to_string(kMaxTriangleDegree) + " not supported");
  return triangle_rules[degree];
}

}  // namespace curvedfs

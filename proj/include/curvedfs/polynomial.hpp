#pragma once

#include "curvedfs/types.hpp"

#include <Eigen/Dense>

namespace curvedfs {

/// Bivariate polynomial sum_{i,j} c(i,j) x^i y^j with exact arithmetic on
/// coefficients. Used to build manufactured solutions and their derivatives.
class Polynomial2 {
 public:
  Polynomial2() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Polynomial2(double constant) : c_(Eigen::MatrixXd::Constant(1, 1, constant)) {}

  static Polynomial2 x();
  static Polynomial2 y();

  double operator()(const Vec2& p) const;
  Polynomial2 dx() const;
  Polynomial2 dy() const;
  Vec2 gradient(const Vec2& p) const { return {dx()(p), dy()(p)}; }
  Polynomial2 laplacian() const { return dx().dx() + dy().dy(); }
  int degree() const;

  Polynomial2 operator+(const Polynomial2& o) const;
  Polynomial2 operator-(const Polynomial2& o) const { return *this + (-1.0) * o; }
  Polynomial2 operator*(const Polynomial2& o) const;
  friend Polynomial2 operator*(double a, const Polynomial2& p) {
    Polynomial2 r = p;
    r.c_ *= a;
    return r;
  }
  friend Polynomial2 operator+(double a, const Polynomial2& p) { return Polynomial2(a) + p; }
  friend Polynomial2 operator-(double a, const Polynomial2& p) { return Polynomial2(a) - p; }

  const Eigen::MatrixXd& coefficients() const { return c_; }

 private:
  explicit Polynomial2(Eigen::MatrixXd c) : c_(std::move(c)) {}
  Eigen::MatrixXd c_;  // c_(i, j) multiplies x^i y^j
};

}  // namespace curvedfs

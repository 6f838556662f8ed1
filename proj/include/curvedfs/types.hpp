#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace curvedfs {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// A point of the closed reference triangle with vertices (0,0), (1,0), (0,1).
struct RefPoint {
  double x1 = 0.0;
  double x2 = 0.0;

  Vec2 vec() const { return {x1, x2}; }
  static RefPoint from(const Vec2& v) { return {v.x(), v.y()}; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input (bad arguments, malformed meshes).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Nonpositive Jacobian determinant on an element.
class GeometryError : public Error {
 public:
  GeometryError(int element, const std::string& what)
      : Error("element " + std::to_string(element) + ": " + what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

/// Factorization failure or residual above tolerance.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvedfs

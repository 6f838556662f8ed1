#include "curvedfs/polynomial.hpp"

#include <algorithm>

namespace curvedfs {

Polynomial2 Polynomial2::x() {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 1);
  c(1, 0) = 1.0;
  return Polynomial2(c);
}

Polynomial2 Polynomial2::y() {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(1, 2);
  c(0, 1) = 1.0;
  return Polynomial2(c);
}

double Polynomial2::operator()(const Vec2& p) const {
  // Horner in x for each y-column, then Horner in y.
  double result = 0.0;
  for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) {
    double col = 0.0;
    for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) col = col * p.x() + c_(i, j);
    result = result * p.y() + col;
  }
  return result;
}

Polynomial2 Polynomial2::dx() const {
  if (c_.rows() == 1) return Polynomial2(Eigen::MatrixXd::Zero(1, c_.cols()));
  Eigen::MatrixXd d(c_.rows() - 1, c_.cols());
  for (Eigen::Index i = 1; i < c_.rows(); ++i) d.row(i - 1) = static_cast<double>(i) * c_.row(i);
  return Polynomial2(d);
}

Polynomial2 Polynomial2::dy() const {
  if (c_.cols() == 1) return Polynomial2(Eigen::MatrixXd::Zero(c_.rows(), 1));
  Eigen::MatrixXd d(c_.rows(), c_.cols() - 1);
  for (Eigen::Index j = 1; j < c_.cols(); ++j) d.col(j - 1) = static_cast<double>(j) * c_.col(j);
  return Polynomial2(d);
}

int Polynomial2::degree() const {
  int deg = 0;
  for (Eigen::Index i = 0; i < c_.rows(); ++i)
    for (Eigen::Index j = 0; j < c_.cols(); ++j)
      if (c_(i, j) != 0.0) deg = std::max(deg, static_cast<int>(i + j));
  return deg;
}

Polynomial2 Polynomial2::operator+(const Polynomial2& o) const {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(std::max(c_.rows(), o.c_.rows()), std::max(c_.cols(), o.c_.cols()));
  r.topLeftCorner(c_.rows(), c_.cols()) += c_;
  r.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
  return Polynomial2(r);
}

Polynomial2 Polynomial2::operator*(const Polynomial2& o) const {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(c_.rows() + o.c_.rows() - 1, c_.cols() + o.c_.cols() - 1);
  for (Eigen::Index i = 0; i < c_.rows(); ++i)
    for (Eigen::Index j = 0; j < c_.cols(); ++j) {
      if (c_(i, j) == 0.0) continue;
      r.block(i, j, o.c_.rows(), o.c_.cols()) += c_(i, j) * o.c_;
    }
  return Polynomial2(r);
}

}  // namespace curvedfs

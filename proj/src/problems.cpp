#include "curvedfs/problems.hpp"

#include <memory>

namespace curvedfs {

namespace {

struct PolyData {
  Polynomial2 u1, u2, p, f1, f2;
  Polynomial2 du1x, du1y, du2x, du2y;
};

Problem from_polynomials(std::string name, double nu, const Polynomial2& u1, const Polynomial2& u2,
                         const Polynomial2& p) {
  auto d = std::make_shared<PolyData>();
  d->u1 = u1;
  d->u2 = u2;
  d->p = p;
  d->f1 = (-nu) * u1.laplacian() + p.dx();
  d->f2 = (-nu) * u2.laplacian() + p.dy();
  d->du1x = u1.dx();
  d->du1y = u1.dy();
  d->du2x = u2.dx();
  d->du2y = u2.dy();

  Problem prob;
  prob.name = std::move(name);
  prob.nu = nu;
  prob.u = [d](const Vec2& x) { return Vec2(d->u1(x), d->u2(x)); };
  prob.grad_u = [d](const Vec2& x) {
    Mat2 g;
    g << d->du1x(x), d->du1y(x), d->du2x(x), d->du2y(x);
    return g;
  };
  prob.p = [d](const Vec2& x) { return d->p(x); };
  prob.f = [d](const Vec2& x) { return Vec2(d->f1(x), d->f2(x)); };
  return prob;
}

}  // namespace

Problem make_problem(const std::string& name, double nu, bool square_psi) {
  const Polynomial2 x = Polynomial2::x();
  const Polynomial2 y = Polynomial2::y();
  const Polynomial2 pressure = 2.0 * x * x * (1.0 - x) * y * (1.0 - y);
  if (name == "noflow") return from_polynomials(name, nu, Polynomial2(), Polynomial2(), pressure);
  if (name == "flow") {
    Polynomial2 psi;
    if (square_psi) {
      psi = 0.01 * x * x * (1.0 - x) * (1.0 - x) * y * y * (1.0 - y) * (1.0 - y);
    } else {
      const Polynomial2 s = 1.0 - x * x - y * y;
      psi = 0.01 * s * s;
    }
    return from_polynomials(name, nu, psi.dy(), (-1.0) * psi.dx(), pressure);
  }
  throw ValidationError("unknown problem '" + name + "' (expected noflow or flow)");
}

}  // namespace curvedfs

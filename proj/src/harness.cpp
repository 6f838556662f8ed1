#include "curvedfs/harness.hpp"

#include "curvedfs/quadrature.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

namespace curvedfs {

ErrorReport error_norms(const Discretization& d, const StokesSolution& sol, const Problem& prob, int quad_degree) {
  if (sol.u.size() != d.V().n_dofs || sol.p.size() != d.Q().n_dofs)
    throw ValidationError("error_norms: solution does not belong to this discretization");
  const Mesh& mesh = d.mesh();
  const Space& Q = d.Q();

  // Shift the exact pressure so that its vertex samples satisfy the discrete constraint.
  Eigen::VectorXd samples(Q.n_dofs);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int i = 0; i < 3; ++i) samples(3 * t + i) = prob.p(mesh.vertex(mesh.triangle(t)[i]));
  const double shift = Q.constraint.dot(samples) / Q.constraint.sum();

  const QuadRule& q = triangle_rule(quad_degree);
  const auto& p1 = refelem::p1_basis();
  double eu = 0.0, eg = 0.0, ep = 0.0, ediv = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry& g = d.geometry(t);
    const auto& fields = d.v_fields(t);
    const Eigen::VectorXd ul = gather(d.V(), sol.u, t);
    const Eigen::VectorXd pl = gather(Q, sol.p, t);
    refelem::VectorP2 uhat;
    for (int i = 0; i < 14; ++i) uhat += ul(i) * fields[i];
    for (std::size_t m = 0; m < q.size(); ++m) {
      const RefPoint& x = q.points[m];
      const PiolaEval pe = piola_at(g, x);
      const Vec2 v = uhat.value(x);
      const Mat2 jv = uhat.jacobian(x);
      Mat2 dref;
      for (int k = 0; k < 2; ++k) dref.col(k) = pe.dA[k] * v + pe.A * jv.col(k);
      const Vec2 uh = pe.A * v;
      const Mat2 grad_uh = dref * pe.DF_inv;
      // Accumulate the divergence in extended precision: for large velocities
      // the summed terms cancel to near zero.
      long double div_ref = 0.0L;
      for (int i = 0; i < 14; ++i) div_ref += static_cast<long double>(ul(i)) * fields[i].divergence(x);
      const double div_uh = static_cast<double>(div_ref) / pe.det;
      double ph = 0.0;
      for (int i = 0; i < 3; ++i) ph += pl(i) * p1[i].value(x);

      const Vec2 xp = g.F(x);
      const double w = q.weights[m] * pe.det;
      eu += w * (prob.u(xp) - uh).squaredNorm();
      eg += w * (prob.grad_u(xp) - grad_uh).squaredNorm();
      const double dp = prob.p(xp) - shift - ph;
      ep += w * dp * dp;
      ediv += w * div_uh * div_uh;
    }
  }
  ErrorReport r;
  r.scheme = to_string(sol.scheme);
  r.problem = prob.name;
  r.nu = sol.nu;
  r.h = mesh.max_diameter();
  r.dofs = d.V().n_dofs - static_cast<int>(d.V().boundary_dofs.size()) + Q.n_dofs;
  r.err_u_l2 = std::sqrt(eu);
  r.err_u_h1 = std::sqrt(eg);
  r.err_p_l2 = std::sqrt(ep);
  r.div_l2 = std::sqrt(ediv);
  r.residual = sol.residual;
  return r;
}

void compute_rates(std::vector<ErrorReport>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ErrorReport& r = rows[i];
    r.rate_u_l2.reset();
    r.rate_u_h1.reset();
    r.rate_p_l2.reset();
    if (i == 0) continue;
    const ErrorReport& prev = rows[i - 1];
    if (prev.scheme != r.scheme || prev.problem != r.problem || prev.nu != r.nu || prev.n >= r.n) continue;
    const double levels = std::log2(static_cast<double>(r.n) / prev.n);
    auto rate = [&](double a, double b) { return std::log2(a / b) / levels; };
    r.rate_u_l2 = rate(prev.err_u_l2, r.err_u_l2);
    r.rate_u_h1 = rate(prev.err_u_h1, r.err_u_h1);
    r.rate_p_l2 = rate(prev.err_p_l2, r.err_p_l2);
  }
}

namespace {

std::string run_context(int n, const std::string& problem, double nu) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=%d problem=%s nu=%g: ", n, problem.c_str(), nu);
  return buf;
}

// Solve every (scheme, nu) combination on one mesh, reusing assembly and
// one factorization per viscosity.
std::vector<ErrorReport> solve_on_mesh(int n, const std::string& problem, const std::vector<Scheme>& schemes,
                                       const std::vector<double>& nus, const StudyOptions& options) {
  std::vector<ErrorReport> rows;
  double current_nu = nus.empty() ? 0.0 : nus.front();
  try {
    const Mesh mesh = generate_disk_mesh(n);
    const Discretization d(mesh);
    const StokesOperators ops = assemble_operators(d, options.quad_a_degree);
    for (double nu : nus) {
      current_nu = nu;
      const auto start = std::chrono::steady_clock::now();
      const Problem prob = make_problem(problem, nu, options.square_psi);
      const StokesSolver solver(d, ops, nu);
      const Eigen::VectorXd fy = interpolate_Y(mesh, prob.f);
      for (Scheme s : schemes) {
        const StokesSolution sol = solver.solve(assemble_rhs(d, fy, s), s);
        ErrorReport r = error_norms(d, sol, prob);
        r.n = n;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(r);
      }
    }
  } catch (const SolverError& e) {
    throw SolverError(run_context(n, problem, current_nu) + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(run_context(n, problem, current_nu) + e.what());
  }
  return rows;
}

}  // namespace

std::vector<ErrorReport> convergence_study(const std::vector<int>& ns, const std::string& problem,
                                           const std::vector<Scheme>& schemes, double nu,
                                           const StudyOptions& options) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2) throw ValidationError("convergence_study: every n must be >= 2");
    if (i > 0 && ns[i] <= ns[i - 1]) throw ValidationError("convergence_study: ns must be strictly ascending");
  }
  std::vector<std::vector<ErrorReport>> by_scheme(schemes.size());
  for (int n : ns) {
    const auto rows = solve_on_mesh(n, problem, schemes, {nu}, options);
    for (std::size_t s = 0; s < schemes.size(); ++s) by_scheme[s].push_back(rows[s]);
  }
  std::vector<ErrorReport> out;
  for (auto& rows : by_scheme) out.insert(out.end(), rows.begin(), rows.end());
  compute_rates(out);
  return out;
}

std::vector<ErrorReport> nu_sweep(int n, const std::vector<double>& nus, const std::string& problem,
                                  const StudyOptions& options) {
  for (double nu : nus) {
    if (!(nu > 0.0)) throw ValidationError("nu_sweep: viscosities must be positive");
  }
  const std::vector<Scheme> schemes{Scheme::Standard, Scheme::Modified};
  const auto rows = solve_on_mesh(n, problem, schemes, nus, options);
  // solve_on_mesh orders by nu then scheme; regroup by scheme.
  std::vector<ErrorReport> out;
  for (std::size_t s = 0; s < schemes.size(); ++s)
    for (std::size_t k = 0; k < nus.size(); ++k) out.push_back(rows[k * schemes.size() + s]);
  compute_rates(out);
  return out;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string rate_cell(const std::optional<double>& r) { return r ? fmt("%.3f", *r) : std::string(); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<ErrorReport>& rows) {
  out << kCsvHeader << "\n";
  for (const ErrorReport& r : rows) {
    out << r.scheme << ',' << r.problem << ',' << fmt("%g", r.nu) << ',' << r.n << ',' << fmt("%.6f", r.h) << ','
        << r.dofs << ',' << fmt("%.6e", r.err_u_l2) << ',' << rate_cell(r.rate_u_l2) << ','
        << fmt("%.6e", r.err_u_h1) << ',' << rate_cell(r.rate_u_h1) << ',' << fmt("%.6e", r.err_p_l2) << ','
        << rate_cell(r.rate_p_l2) << ',' << fmt("%.6e", r.div_l2) << "\n";
  }
}

void write_markdown(std::ostream& out, const std::vector<ErrorReport>& rows) {
  const char* head[] = {"scheme", "problem", "nu", "n", "h", "dofs", "‖u-u_h‖₀", "rate", "‖∇_h(u-u_h)‖₀",
                        "rate", "‖p-p_h‖₀", "rate", "‖div_h u_h‖₀"};
  std::vector<std::vector<std::string>> cells;
  for (const ErrorReport& r : rows) {
    cells.push_back({r.scheme, r.problem, fmt("%g", r.nu), std::to_string(r.n), fmt("%.4f", r.h),
                     std::to_string(r.dofs), fmt("%.3E", r.err_u_l2), rate_cell(r.rate_u_l2),
                     fmt("%.3E", r.err_u_h1), rate_cell(r.rate_u_h1), fmt("%.3E", r.err_p_l2),
                     rate_cell(r.rate_p_l2), fmt("%.3E", r.div_l2)});
  }
  // Column widths count code points so the UTF-8 headers align.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  constexpr int ncol = 13;
  std::vector<std::size_t> widths(ncol);
  for (int c = 0; c < ncol; ++c) {
    widths[c] = width(head[c]);
    for (const auto& row : cells) widths[c] = std::max(widths[c], width(row[c]));
  }
  auto emit = [&](auto get) {
    out << '|';
    for (int c = 0; c < ncol; ++c) {
      const std::string s = get(c);
      out << ' ' << s << std::string(widths[c] - width(s), ' ') << " |";
    }
    out << '\n';
  };
  emit([&](int c) { return std::string(head[c]); });
  emit([&](int c) { return std::string(widths[c], '-'); });
  for (const auto& row : cells) emit([&](int c) { return row[c]; });
}

}  // namespace curvedfs

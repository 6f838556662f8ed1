#pragma once

#include "curvedfs/assembly.hpp"
#include "curvedfs/problems.hpp"
#include "curvedfs/solver.hpp"

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace curvedfs {

struct ErrorReport {
  std::string scheme;
  std::string problem;
  double nu = 1.0;
  int n = 0;
  double h = 0.0;
  int dofs = 0;
  double err_u_l2 = 0.0;
  double err_u_h1 = 0.0;  // broken H1 seminorm
  double err_p_l2 = 0.0;
  double div_l2 = 0.0;
  std::optional<double> rate_u_l2, rate_u_h1, rate_p_l2;
  double residual = 0.0;
  double seconds = 0.0;
};

struct StudyOptions {
  int quad_a_degree = 10;
  bool square_psi = false;
};

/// Errors of `sol` against `prob` over Omega_h with a degree-`quad_degree`
/// rule. The exact pressure is shifted by the constant c solving
/// L.(p samples - c) = 0 before comparison.
ErrorReport error_norms(const Discretization& d, const StokesSolution& sol, const Problem& prob,
                        int quad_degree = 10);

/// One solve per n (mesh = generate_disk_mesh(n)) for each scheme. Rows are
/// grouped by scheme in the order given; rates compare consecutive rows.
/// Errors are rethrown with the offending n prepended.
std::vector<ErrorReport> convergence_study(const std::vector<int>& ns, const std::string& problem,
                                           const std::vector<Scheme>& schemes, double nu,
                                           const StudyOptions& options = {});

/// Fixed mesh, one row per (scheme, nu); both schemes, standard first.
std::vector<ErrorReport> nu_sweep(int n, const std::vector<double>& nus, const std::string& problem,
                                  const StudyOptions& options = {});

/// Fill rate fields as log2(e_prev / e) within each (scheme, problem, nu) run.
void compute_rates(std::vector<ErrorReport>& rows);

inline constexpr const char* kCsvHeader =
    "scheme,problem,nu,n,h,dofs,err_u_l2,rate_u_l2,err_u_h1,rate_u_h1,err_p_l2,rate_p_l2,div_l2";

void write_csv(std::ostream& out, const std::vector<ErrorReport>& rows);
void write_markdown(std::ostream& out, const std::vector<ErrorReport>& rows);

}  // namespace curvedfs

// Command-line driver: mesh generation, single solves, convergence studies
// and viscosity sweeps. Exit codes: 0 success, 1 invalid input, 2 solver failure.

#include "curvedfs/harness.hpp"
#include "curvedfs/mesh.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace curvedfs;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ValidationError("empty list '" + s + "'");
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw ValidationError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw ValidationError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curved Fortin-Soulie Stokes solver"};
  app.require_subcommand(1);

  int quad_a_degree = 10;
  bool square_psi = false;
  app.add_option("--quad-a-degree", quad_a_degree, "Triangle rule degree for the viscous form")
      ->check(CLI::Range(1, 12));
  app.add_flag("--square-psi", square_psi, "Use the unit-square streamfunction for the flow problem");

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "Write a concentric-ring disk mesh");
  int mesh_n = 0;
  std::string mesh_out;
  mesh_cmd->add_option("--n", mesh_n, "Number of rings")->required();
  mesh_cmd->add_option("--out", mesh_out, "Output .fsmesh path")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and write the solution as JSON");
  std::string solve_mesh;
  int solve_n = 0;
  std::string solve_problem = "flow";
  std::string solve_scheme = "modified";
  double solve_nu = 1.0;
  std::string solve_out;
  auto* mesh_opt = solve_cmd->add_option("--mesh", solve_mesh, "Mesh file");
  auto* n_opt = solve_cmd->add_option("--n", solve_n, "Generate a disk mesh with n rings");
  mesh_opt->excludes(n_opt);
  solve_cmd->add_option("--problem", solve_problem)->check(CLI::IsMember({"noflow", "flow"}));
  solve_cmd->add_option("--scheme", solve_scheme)->check(CLI::IsMember({"standard", "modified"}));
  solve_cmd->add_option("--nu", solve_nu);
  solve_cmd->add_option("--out", solve_out, "JSON output path")->required();

  // convergence
  auto* conv_cmd = app.add_subcommand("convergence", "Convergence study over disk meshes");
  std::string conv_ns = "4,8,16,32";
  std::string conv_problem = "flow";
  std::string conv_scheme = "both";
  double conv_nu = 1.0;
  std::string conv_csv, conv_md;
  conv_cmd->add_option("--ns", conv_ns, "Comma-separated ring counts");
  conv_cmd->add_option("--problem", conv_problem)->check(CLI::IsMember({"noflow", "flow"}));
  conv_cmd->add_option("--scheme", conv_scheme)->check(CLI::IsMember({"standard", "modified", "both"}));
  conv_cmd->add_option("--nu", conv_nu);
  conv_cmd->add_option("--csv", conv_csv, "CSV output path")->required();
  conv_cmd->add_option("--markdown", conv_md, "Markdown table output path");

  // sweep-nu
  auto* sweep_cmd = app.add_subcommand("sweep-nu", "Viscosity sweep on a fixed mesh, both schemes");
  int sweep_n = 16;
  std::string sweep_nus = "1e0,1e-2,1e-4,1e-6,1e-8";
  std::string sweep_problem = "flow";
  std::string sweep_csv;
  sweep_cmd->add_option("--n", sweep_n);
  sweep_cmd->add_option("--nus", sweep_nus, "Comma-separated viscosities");
  sweep_cmd->add_option("--problem", sweep_problem)->check(CLI::IsMember({"noflow", "flow"}));
  sweep_cmd->add_option("--csv", sweep_csv, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const StudyOptions options{quad_a_degree, square_psi};
  try {
    if (*mesh_cmd) {
      const Mesh mesh = generate_disk_mesh(mesh_n);
      save_mesh(mesh, mesh_out);
      std::cout << "wrote " << mesh_out << ": " << mesh.num_vertices() << " vertices, " << mesh.num_triangles()
                << " triangles\n";
    } else if (*solve_cmd) {
      if (solve_mesh.empty() && solve_n == 0) throw ValidationError("solve: give --mesh or --n");
      const auto start = std::chrono::steady_clock::now();
      const Mesh mesh = solve_mesh.empty() ? generate_disk_mesh(solve_n) : load_mesh(solve_mesh);
      const Discretization d(mesh);
      const Problem prob = make_problem(solve_problem, solve_nu, square_psi);
      const Scheme scheme = parse_scheme(solve_scheme);
      const StokesOperators ops = assemble_operators(d, quad_a_degree);
      const StokesSolver solver(d, ops, solve_nu);
      const StokesSolution sol = solver.solve(assemble_rhs(d, interpolate_Y(mesh, prob.f), scheme), scheme);
      const ErrorReport err = error_norms(d, sol, prob);
      const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      nlohmann::json j;
      j["problem"] = solve_problem;
      j["scheme"] = solve_scheme;
      j["nu"] = solve_nu;
      j["mesh"] = {{"vertices", mesh.num_vertices()},
                   {"triangles", mesh.num_triangles()},
                   {"edges", mesh.num_edges()},
                   {"curved_edges", mesh.curved_midpoints().size()},
                   {"h", mesh.max_diameter()}};
      j["dims"] = {{"V", d.V().n_dofs},
                   {"V_free", d.V().n_dofs - static_cast<int>(d.V().boundary_dofs.size())},
                   {"Q", d.Q().n_dofs},
                   {"system", solver.system_size()}};
      j["u"] = to_vector(sol.u);
      j["p"] = to_vector(sol.p);
      j["multiplier"] = sol.multiplier;
      j["residual"] = sol.residual;
      j["errors"] = {{"u_l2", err.err_u_l2}, {"u_h1", err.err_u_h1}, {"p_l2", err.err_p_l2}, {"div_l2", err.div_l2}};
      j["timings"] = {{"factor_seconds", sol.factor_seconds},
                      {"solve_seconds", sol.solve_seconds},
                      {"total_seconds", total}};
      open_out(solve_out) << j.dump(1) << "\n";
      std::cout << "residual " << sol.residual << ", |u-u_h|_1 " << err.err_u_h1 << ", |p-p_h|_0 " << err.err_p_l2
                << "\n";
    } else if (*conv_cmd) {
      std::vector<Scheme> schemes;
      if (conv_scheme == "both") {
        schemes = {Scheme::Standard, Scheme::Modified};
      } else {
        schemes = {parse_scheme(conv_scheme)};
      }
      const auto rows = convergence_study(parse_ints(conv_ns), conv_problem, schemes, conv_nu, options);
      {
        auto out = open_out(conv_csv);
        write_csv(out, rows);
      }
      if (!conv_md.empty()) {
        auto out = open_out(conv_md);
        write_markdown(out, rows);
      }
      write_markdown(std::cout, rows);
    } else if (*sweep_cmd) {
      const auto rows = nu_sweep(sweep_n, parse_doubles(sweep_nus), sweep_problem, options);
      auto out = open_out(sweep_csv);
      write_csv(out, rows);
      write_markdown(std::cout, rows);
    }
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

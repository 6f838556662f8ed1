#include "curvedfs/harness.hpp"
#include "curvedfs/mesh.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace curvedfs;

namespace {

StokesSolution zero_solution(const Discretization& d) {
  StokesSolution s;
  s.u = Eigen::VectorXd::Zero(d.V().n_dofs);
  s.p = Eigen::VectorXd::Zero(d.Q().n_dofs);
  return s;
}

std::string csv_of(const std::vector<ErrorReport>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

ErrorReport row(const std::string& scheme, int n, double e) {
  ErrorReport r;
  r.scheme = scheme;
  r.problem = "flow";
  r.n = n;
  r.err_u_l2 = e;
  r.err_u_h1 = 2 * e;
  r.err_p_l2 = 3 * e;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("curvedfs_harness_" + name)).string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CURVEDFS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Problems, NoFlow) {
  const Problem p = make_problem("noflow", 1.0);
  const Vec2 x(0.3, -0.4);
  EXPECT_EQ(p.u(x).norm(), 0.0);
  EXPECT_NEAR(p.p(x), 2 * 0.09 * 0.7 * -0.4 * 1.4, 1e-15);
  // f = grad psi, checked by central differences.
  const double h = 1e-6;
  const Vec2 fd((p.p(x + Vec2(h, 0)) - p.p(x - Vec2(h, 0))) / (2 * h),
                (p.p(x + Vec2(0, h)) - p.p(x - Vec2(0, h))) / (2 * h));
  EXPECT_LT((p.f(x) - fd).norm(), 1e-8);
}

TEST(Problems, FlowVelocityVanishesOnCircleAndIsSolenoidal) {
  const Problem p = make_problem("flow", 1.0);
  for (int k = 0; k < 200; ++k) {
    const double a = 2 * std::numbers::pi * k / 200.0;
    const Vec2 x(std::cos(a), std::sin(a));
    EXPECT_LE(p.u(x).norm(), 1e-13);
    EXPECT_LE(std::abs(p.grad_u(x).trace()), 1e-13);
    EXPECT_LE(std::abs(p.grad_u(0.5 * x).trace()), 1e-13);
  }
}

TEST(Problems, FlowForceMatchesFiniteDifferences) {
  for (bool square : {false, true}) {
    const double nu = 0.37;
    const Problem p = make_problem("flow", nu, square);
    const Vec2 x(0.21, -0.33);
    const double h = 1e-4;
    // -nu Lap u via second differences of u, grad p via central differences.
    const Vec2 lap = (p.u(x + Vec2(h, 0)) + p.u(x - Vec2(h, 0)) + p.u(x + Vec2(0, h)) + p.u(x - Vec2(0, h)) -
                      4.0 * p.u(x)) / (h * h);
    const Vec2 gp((p.p(x + Vec2(h, 0)) - p.p(x - Vec2(h, 0))) / (2 * h),
                  (p.p(x + Vec2(0, h)) - p.p(x - Vec2(0, h))) / (2 * h));
    EXPECT_LT((p.f(x) - (-nu * lap + gp)).norm(), 1e-6) << "square_psi=" << square;
    Mat2 gu;
    gu.col(0) = (p.u(x + Vec2(h, 0)) - p.u(x - Vec2(h, 0))) / (2 * h);
    gu.col(1) = (p.u(x + Vec2(0, h)) - p.u(x - Vec2(0, h))) / (2 * h);
    EXPECT_LT((p.grad_u(x) - gu).norm(), 1e-8);
  }
}

TEST(Problems, UnknownName) { EXPECT_THROW(make_problem("cavity", 1.0), ValidationError); }

TEST(Polynomial, Arithmetic) {
  const Polynomial2 x = Polynomial2::x(), y = Polynomial2::y();
  const Polynomial2 p = 2.0 + x * x * y - 3.0 * y;
  const Vec2 pt(1.5, -0.5);
  EXPECT_DOUBLE_EQ(p(pt), 1.5 * 1.5 * -0.5 + 1.5 + 2.0);
  EXPECT_DOUBLE_EQ(p.dx()(pt), 2 * 1.5 * -0.5);
  EXPECT_DOUBLE_EQ(p.dy()(pt), 1.5 * 1.5 - 3.0);
  EXPECT_DOUBLE_EQ(p.laplacian()(pt), 2 * -0.5);
  EXPECT_EQ(p.degree(), 3);
}

TEST(ErrorNorms, ExactZeroSolution) {
  const Mesh m = generate_disk_mesh(4);
  const Discretization d(m);
  const ErrorReport r = error_norms(d, zero_solution(d), make_problem("noflow", 1.0));
  EXPECT_EQ(r.err_u_l2, 0.0);
  EXPECT_EQ(r.err_u_h1, 0.0);
  EXPECT_EQ(r.div_l2, 0.0);
  EXPECT_GT(r.err_p_l2, 0.0);
}

TEST(ErrorNorms, UnitFieldGivesArea) {
  const Mesh m = generate_disk_mesh(8);
  const Discretization d(m);
  Problem p = make_problem("noflow", 1.0);
  p.u = [](const Vec2&) { return Vec2(1.0, 0.0); };
  const ErrorReport r = error_norms(d, zero_solution(d), p);
  EXPECT_NEAR(r.err_u_l2 * r.err_u_l2, std::numbers::pi, 1e-3);
}

TEST(ErrorNorms, PressureShiftRemovesConstants) {
  const Mesh m = generate_disk_mesh(4);
  const Discretization d(m);
  Problem p = make_problem("noflow", 1.0);
  p.p = [](const Vec2&) { return 5.0; };
  EXPECT_NEAR(error_norms(d, zero_solution(d), p).err_p_l2, 0.0, 1e-13);
}

TEST(ErrorNorms, RejectsForeignSolution) {
  const Mesh m = generate_disk_mesh(2);
  const Discretization d(m);
  StokesSolution s;
  s.u = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(error_norms(d, s, make_problem("noflow", 1.0)), ValidationError);
}

TEST(Rates, ConsecutiveRowsOfOneRun) {
  std::vector<ErrorReport> rows{row("standard", 4, 8e-3), row("standard", 8, 1e-3), row("modified", 4, 1e-3),
                                row("modified", 8, 2.5e-4)};
  compute_rates(rows);
  EXPECT_FALSE(rows[0].rate_u_l2);
  ASSERT_TRUE(rows[1].rate_u_l2);
  EXPECT_NEAR(*rows[1].rate_u_l2, 3.0, 1e-12);
  EXPECT_NEAR(*rows[1].rate_p_l2, 3.0, 1e-12);
  EXPECT_FALSE(rows[2].rate_u_l2);
  EXPECT_NEAR(*rows[3].rate_u_h1, 2.0, 1e-12);
}

TEST(Csv, FormatAndEmptyRateCells) {
  std::vector<ErrorReport> rows{row("standard", 4, 8e-3), row("standard", 8, 1e-3)};
  rows[0].nu = 1e-7;
  rows[1].nu = 1e-7;
  rows[0].h = 0.5;
  compute_rates(rows);
  const auto lines = lines_of(csv_of(rows));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(lines[1], "standard,flow,1e-07,4,0.500000,0,8.000000e-03,,1.600000e-02,,2.400000e-02,,0.000000e+00");
  const auto cells = split(lines[2]);
  ASSERT_EQ(cells.size(), 13u);
  EXPECT_EQ(cells[7], "3.000");
}

TEST(Study, ValidatesMeshSizes) {
  EXPECT_THROW(convergence_study({8, 4}, "noflow", {Scheme::Standard}, 1.0), ValidationError);
  EXPECT_THROW(convergence_study({1, 4}, "noflow", {Scheme::Standard}, 1.0), ValidationError);
  EXPECT_THROW(nu_sweep(4, {1.0, 0.0}, "flow"), ValidationError);
}

TEST(Study, ErrorsCarryContext) {
  try {
    nu_sweep(2, {1e-300}, "flow");
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("n=2"), std::string::npos);
  }
}

TEST(Study, NoFlowStandardRates) {
  const auto rows = convergence_study({4, 8, 16}, "noflow", {Scheme::Standard, Scheme::Modified}, 1.0);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_NEAR(*rows[2].rate_p_l2, 2.0, 0.15);
  EXPECT_GE(*rows[2].rate_u_l2, 2.85);
  EXPECT_GE(*rows[2].rate_u_h1, 1.9);
  for (int i = 3; i < 6; ++i) {
    EXPECT_EQ(rows[i].scheme, "modified");
    EXPECT_LE(rows[i].err_u_h1, 1e-10);
    EXPECT_LE(rows[i].div_l2, 1e-11);
  }
}

TEST(Study, ModifiedFlowIndependentOfViscosity) {
  const auto a = convergence_study({4, 8}, "flow", {Scheme::Modified}, 1.0);
  const auto b = convergence_study({4, 8}, "flow", {Scheme::Modified}, 1e-7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].err_u_l2, b[i].err_u_l2, 5e-7 * a[i].err_u_l2);
    EXPECT_NEAR(a[i].err_u_h1, b[i].err_u_h1, 5e-7 * a[i].err_u_h1);
  }
}

TEST(Study, ViscositySweep) {
  const auto rows = nu_sweep(8, {1.0, 1e-2, 1e-4}, "flow");
  ASSERT_EQ(rows.size(), 6u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(rows[i].scheme, "standard");
  EXPECT_NEAR(rows[2].err_u_h1 / rows[1].err_u_h1, 100.0, 10.0);
  EXPECT_NEAR(rows[2].err_p_l2, rows[1].err_p_l2, 5e-4 * rows[1].err_p_l2);
  for (int i = 4; i < 6; ++i) EXPECT_NEAR(rows[i].err_u_h1, rows[3].err_u_h1, 1e-5 * rows[3].err_u_h1);
}

TEST(Study, CsvByteStable) {
  const auto a = convergence_study({2, 4}, "flow", {Scheme::Standard, Scheme::Modified}, 1e-3);
  const auto b = convergence_study({2, 4}, "flow", {Scheme::Standard, Scheme::Modified}, 1e-3);
  EXPECT_EQ(csv_of(a), csv_of(b));
  std::ostringstream md;
  write_markdown(md, a);
  EXPECT_EQ(lines_of(md.str()).size(), 2u + a.size());
}

TEST(Cli, MeshCommand) {
  const std::string path = temp_path("disk8.fsmesh");
  ASSERT_EQ(run_cli("mesh --n 8 --out " + path), 0);
  const Mesh m = load_mesh(path);
  EXPECT_EQ(m.num_triangles(), 6 * 64);
  std::filesystem::remove(path);
}

TEST(Cli, SolveFromMeshFile) {
  const std::string mesh = temp_path("disk4.fsmesh"), out = temp_path("solve.json");
  ASSERT_EQ(run_cli("mesh --n 4 --out " + mesh), 0);
  ASSERT_EQ(run_cli("solve --mesh " + mesh + " --problem noflow --scheme modified --out " + out), 0);
  const std::string json = read_file(out);
  EXPECT_NE(json.find("\"residual\""), std::string::npos);
  EXPECT_NE(json.find("\"u_h1\""), std::string::npos);
  std::filesystem::remove(mesh);
  std::filesystem::remove(out);
}

TEST(Cli, ConvergenceCsv) {
  const std::string csv = temp_path("conv.csv"), md = temp_path("conv.md");
  ASSERT_EQ(run_cli("convergence --ns 4,8,16,32 --problem noflow --scheme both --nu 1 --csv " + csv +
                    " --markdown " + md),
            0);
  const auto lines = lines_of(read_file(csv));
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(lines_of(read_file(md)).size(), 10u);
  std::filesystem::remove(csv);
  std::filesystem::remove(md);
}

TEST(Cli, SweepCsv) {
  const std::string csv = temp_path("sweep.csv");
  ASSERT_EQ(run_cli("sweep-nu --n 16 --nus 1e0,1e-2,1e-4,1e-6,1e-8 --problem flow --csv " + csv), 0);
  const auto lines = lines_of(read_file(csv));
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], kCsvHeader);
  std::filesystem::remove(csv);
}

TEST(Cli, ExitCodes) {
  const std::string out = temp_path("x.json");
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("solve --n 2 --bogus --out " + out), 1);
  EXPECT_EQ(run_cli("solve --n 2 --nu 0 --out " + out), 1);
  EXPECT_EQ(run_cli("mesh --n 1 --out " + out), 1);
  EXPECT_EQ(run_cli("solve --mesh " + temp_path("missing.fsmesh") + " --out " + out), 1);
  EXPECT_EQ(run_cli("convergence --ns 8,4 --csv " + out), 1);
  EXPECT_EQ(run_cli("solve --n 2 --nu 1e-300 --out " + out), 2);
  EXPECT_EQ(run_cli("--help"), 0);
  std::filesystem::remove(out);
}

#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fdlm/experiments.hpp"
#include "fdlm/parallel.hpp"

namespace fdlm {
namespace {

struct Options {
  int test = 1;
  std::string coupling = "l2";
  std::string assembly = "exact";
  int levels = 4;
  int n_fluid = 16;
  int n_solid = 8;
  std::string out;
  std::string matrix_dump;
  std::string mesh_dump;
  int threads = 0;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  return f;
}

void print_level(std::ostream& out, const ConvergenceRecord& r) {
  out << fmt::format("level {}: h_omega={:.4g} h_solid={:.4g} cf_diff={:.6e}", r.level, r.h_omega,
                     r.h_solid, r.cf_diff_1norm);
  if (std::isfinite(r.err_u_h1))
    out << fmt::format(" err_u_h1={:.6e} err_p_l2={:.6e} err_x_h1={:.6e} err_lambda={:.6e} residual={:.2e}",
                       r.err_u_h1, r.err_p_l2, r.err_x_h1, r.err_lambda, r.relative_residual);
  out << '\n';
}

int run_solve(const Options& o, std::ostream& out) {
  const Coupling coupling = parse_coupling(o.coupling);
  const AssemblyMode mode = parse_assembly_mode(o.assembly);
  const LevelResult res = solve_level({o.n_fluid, o.n_solid}, coupling, mode);
  if (!o.out.empty()) {
    auto f = open_output(o.out);
    write_solution_csv(f, res.solution);
  }
  if (!o.matrix_dump.empty()) {
    auto f = open_output(o.matrix_dump);
    write_coordinate(f, res.blocks.cf);
  }
  if (!o.mesh_dump.empty()) {
    auto f = open_output(o.mesh_dump);
    write_mesh(f, res.spaces.solid->mesh());
  }
  const ErrorNorms& n = res.norms;
  out << fmt::format("err_u_h1 {:.17g} (relative {:.6e})\n", n.err_u_h1, n.rel_u_h1);
  out << fmt::format("err_p_l2 {:.17g} (relative {:.6e})\n", n.err_p_l2, n.rel_p_l2);
  out << fmt::format("err_x_h1 {:.17g} (relative {:.6e})\n", n.err_x_h1, n.rel_x_h1);
  out << fmt::format("err_lambda {:.17g} (relative {:.6e})\n", n.err_lambda, n.rel_lambda);
  out << fmt::format("cf_diff_1norm {:.17g}\n", res.cf_diff_1norm);
  out << fmt::format("relative_residual {:.3e}\n", res.relative_residual);
  out << fmt::format("max_abs_div {:.3e}\n", res.divergence_residual);
  return 0;
}

int run_sequence(const Options& o, bool solve, std::ostream& out) {
  const Coupling coupling = parse_coupling(o.coupling);
  const AssemblyMode mode = parse_assembly_mode(o.assembly);
  const ExperimentPlan plan = ExperimentPlan::make(o.test, coupling, mode, o.levels);
  auto progress = [&out](const ConvergenceRecord& r) { print_level(out, r); };
  const auto records = solve ? run_convergence(plan, progress) : run_quadrature_study(plan, progress);
  if (!o.out.empty()) {
    auto f = open_output(o.out);
    if (solve)
      write_convergence_csv(f, records);
    else
      write_quadrature_csv(f, records);
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fictitious-domain FSI coupling: quadrature-error and convergence experiments", "fdlm"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker cap (overrides FDLM_THREADS)")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Solve one mesh pair and print error norms");
  solve->add_option("--n-fluid", o.n_fluid, "Pressure mesh cells per side")->check(CLI::PositiveNumber);
  solve->add_option("--n-solid", o.n_solid, "Solid mesh cells per side")->check(CLI::PositiveNumber);
  solve->add_option("--coupling", o.coupling)->check(CLI::IsMember({"l2", "h1"}));
  solve->add_option("--assembly", o.assembly)->check(CLI::IsMember({"exact", "approx"}));
  solve->add_option("--out", o.out, "Solution CSV (field,dof_index,value)");
  solve->add_option("--matrix-dump", o.matrix_dump, "Coupling matrix in coordinate format");
  solve->add_option("--mesh-dump", o.mesh_dump, "Solid mesh in plain-text format");

  auto* quaderr = app.add_subcommand("quaderr", "Coupling-matrix quadrature error per level");
  quaderr->add_option("--test", o.test)->check(CLI::IsMember({1, 2}));
  quaderr->add_option("--coupling", o.coupling)->check(CLI::IsMember({"l2", "h1"}));
  quaderr->add_option("--levels", o.levels)->check(CLI::PositiveNumber);
  quaderr->add_option("--out", o.out, "CSV output");

  auto* run = app.add_subcommand("run", "Full convergence study");
  run->add_option("--test", o.test)->check(CLI::IsMember({1, 2}));
  run->add_option("--coupling", o.coupling)->check(CLI::IsMember({"l2", "h1"}));
  run->add_option("--assembly", o.assembly)->check(CLI::IsMember({"exact", "approx"}));
  run->add_option("--levels", o.levels)->check(CLI::PositiveNumber);
  run->add_option("--out", o.out, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (o.threads > 0) set_worker_count(o.threads);
  try {
    if (solve->parsed()) return run_solve(o, out);
    if (quaderr->parsed()) return run_sequence(o, false, out);
    return run_sequence(o, true, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fdlm

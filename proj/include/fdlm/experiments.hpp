#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fdlm/assembly.hpp"
#include "fdlm/error_norms.hpp"
#include "fdlm/geom_intersect.hpp"
#include "fdlm/saddle_solver.hpp"

namespace fdlm {

/// Fluid domain [-2,2]^2 and solid reference domain [0,1]^2 of the benchmark.
Rect benchmark_fluid_domain();
Rect benchmark_solid_domain();

/// Mesh pair of one refinement level: pressure-mesh and solid-mesh cells per side.
struct MeshPair {
  int n_fluid;
  int n_solid;
};

/// Test 1: (16 * 2^k, 8 * 2^k), so the solid/fluid spacing ratio stays 1/2.
std::vector<MeshPair> test1_schedule(int levels);
/// Test 2: n_fluid = 8 * 2^k, n_solid = round((n_fluid / 2)^(3/2)).
std::vector<MeshPair> test2_schedule(int levels);

struct ExperimentPlan {
  int test_id = 1;
  Coupling coupling = Coupling::l2;
  AssemblyMode assembly_mode = AssemblyMode::exact;
  int levels = 4;
  std::vector<MeshPair> schedule;

  /// Fills the schedule for test 1 or 2; throws on any other id or levels < 1.
  static ExperimentPlan make(int test_id, Coupling coupling, AssemblyMode mode, int levels);
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ConvergenceRecord {
  int level = 0;
  double h_omega = 0.0;
  double h_solid = 0.0;
  double err_u_h1 = kNaN;
  double err_p_l2 = kNaN;
  double err_x_h1 = kNaN;
  double err_lambda = kNaN;
  double cf_diff_1norm = kNaN;
  double rate_u = kNaN;
  double rate_p = kNaN;
  double rate_x = kNaN;
  double rate_lambda = kNaN;
  double rate_cf = kNaN;

  // solver diagnostics, not written to the CSV
  double relative_residual = kNaN;
  double divergence_residual = kNaN;  ///< max |B u_h|
  double pressure_mean = kNaN;
  ErrorNorms norms;
};

/// Everything computed for one mesh pair.
struct LevelResult {
  DiscreteSpaces spaces;
  Blocks blocks;
  SparseMatrix cf_other;  ///< the coupling matrix of the mode not used in the solve
  DiscreteSolution solution;
  ErrorNorms norms;
  double cf_diff_1norm;
  double relative_residual;
  double divergence_residual;
  double pressure_mean;
};

/// Assembles both coupling variants, solves with `mode` and evaluates the errors.
LevelResult solve_level(MeshPair mesh, Coupling coupling, AssemblyMode mode);

/// ||C_f - C_f,h||_1 for one mesh pair, without solving.
double coupling_difference(MeshPair mesh, Coupling coupling);

using LevelCallback = std::function<void(const ConvergenceRecord&)>;

/// Solves every level of the plan. Errors are rethrown with the level prepended.
std::vector<ConvergenceRecord> run_convergence(const ExperimentPlan& plan,
                                               const LevelCallback& on_level = {});

/// Only the coupling-matrix difference per level.
std::vector<ConvergenceRecord> run_quadrature_study(const ExperimentPlan& plan,
                                                    const LevelCallback& on_level = {});

/// Least-squares slope of log(y) against log(x); NaN if any value is not positive.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Test 1: rate_k = log2(e_{k-1} / e_k). Test 2: least-squares slope of log e against
/// log h_solid over levels 0..k. Level 0 and undefined rates are NaN.
void compute_rates(std::vector<ConvergenceRecord>& records, int test_id);

/// `level,h_omega,h_solid,err_u_h1,...,rate_cf` with 17 significant digits.
void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRecord> records);
/// `level,h_solid,h_omega,cf_diff_1norm,rate`.
void write_quadrature_csv(std::ostream& os, std::span<const ConvergenceRecord> records);

}  // namespace fdlm

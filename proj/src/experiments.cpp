#include "fdlm/experiments.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace fdlm {
namespace {

const FormParams kBenchmarkParams{};  // alpha = 0, nu = 1, beta = 0, kappa = 1

std::string num(double v) { return fmt::format("{:.17g}", v); }

double rate_between(double e0, double e1, double h0, double h1) {
  if (!(e0 > 0.0) || !(e1 > 0.0) || !std::isfinite(e0) || !std::isfinite(e1)) return kNaN;
  return std::log(e0 / e1) / std::log(h0 / h1);
}

}  // namespace

Rect benchmark_fluid_domain() { return {Vec2(-2.0, -2.0), Vec2(2.0, 2.0)}; }
Rect benchmark_solid_domain() { return {Vec2(0.0, 0.0), Vec2(1.0, 1.0)}; }

std::vector<MeshPair> test1_schedule(int levels) {
  std::vector<MeshPair> s;
  for (int k = 0; k < levels; ++k) s.push_back({16 << k, 8 << k});
  return s;
}

std::vector<MeshPair> test2_schedule(int levels) {
  std::vector<MeshPair> s;
  for (int k = 0; k < levels; ++k) {
    const int nf = 8 << k;
    s.push_back({nf, static_cast<int>(std::lround(std::pow(nf / 2.0, 1.5)))});
  }
  return s;
}

ExperimentPlan ExperimentPlan::make(int test_id, Coupling coupling, AssemblyMode mode, int levels) {
  if (levels < 1) throw std::invalid_argument("ExperimentPlan: levels must be >= 1");
  ExperimentPlan p;
  p.test_id = test_id;
  p.coupling = coupling;
  p.assembly_mode = mode;
  p.levels = levels;
  if (test_id == 1)
    p.schedule = test1_schedule(levels);
  else if (test_id == 2)
    p.schedule = test2_schedule(levels);
  else
    throw std::invalid_argument(fmt::format("ExperimentPlan: unknown test {}", test_id));
  return p;
}

LevelResult solve_level(MeshPair mesh, Coupling coupling, AssemblyMode mode) {
  const ManufacturedSolution exact = immersed_square_solution();
  DiscreteSpaces spaces =
      make_spaces(benchmark_fluid_domain(), mesh.n_fluid, benchmark_solid_domain(), mesh.n_solid);
  const SolidMap xbar = per_element_map(spaces.solid->mesh(), exact.xbar);

  const SparseMatrix cf_exact = assemble_cf_exact(*spaces.multiplier, *spaces.velocity, xbar, coupling);
  const SparseMatrix cf_approx = assemble_cf_approx(*spaces.multiplier, *spaces.velocity, xbar, coupling);
  const double diff = coupling_quadrature_error(cf_exact, cf_approx);

  Blocks blocks{assemble_af(*spaces.velocity, kBenchmarkParams),
                assemble_as(*spaces.solid, kBenchmarkParams),
                assemble_b(*spaces.velocity, *spaces.pressure),
                mode == AssemblyMode::exact ? cf_exact : cf_approx,
                assemble_cs(*spaces.multiplier, *spaces.solid, coupling),
                pressure_mean_weights(*spaces.pressure)};
  const RhsVectors rhs = assemble_rhs(spaces, exact, xbar, coupling, mode, kBenchmarkParams);
  const BlockSystem system = build_system(blocks, rhs, spaces.velocity->dirichlet_mask());
  DiscreteSolution sol = solve(system, spaces);
  ErrorNorms norms = error_norms(sol, exact, coupling);

  const double div = blocks.b.multiply(sol.u.coefficients).lpNorm<Eigen::Infinity>();
  const double mean = blocks.mean_weights.dot(sol.p.coefficients);
  const double rel = sol.relative_residual();
  return {std::move(spaces), std::move(blocks), mode == AssemblyMode::exact ? cf_approx : cf_exact,
          std::move(sol), norms, diff, rel, div, mean};
}

double coupling_difference(MeshPair mesh, Coupling coupling) {
  const DiscreteSpaces spaces =
      make_spaces(benchmark_fluid_domain(), mesh.n_fluid, benchmark_solid_domain(), mesh.n_solid);
  const SolidMap xbar = per_element_map(spaces.solid->mesh(), immersed_square_map());
  return coupling_quadrature_error(assemble_cf_exact(*spaces.multiplier, *spaces.velocity, xbar, coupling),
                           assemble_cf_approx(*spaces.multiplier, *spaces.velocity, xbar, coupling));
}

std::vector<ConvergenceRecord> run_convergence(const ExperimentPlan& plan,
                                               const LevelCallback& on_level) {
  std::vector<ConvergenceRecord> records;
  for (std::size_t k = 0; k < plan.schedule.size(); ++k) {
    const MeshPair mp = plan.schedule[k];
    ConvergenceRecord r;
    r.level = static_cast<int>(k);
    r.h_omega = benchmark_fluid_domain().width() / mp.n_fluid;
    r.h_solid = benchmark_solid_domain().width() / mp.n_solid;
    try {
      const LevelResult res = solve_level(mp, plan.coupling, plan.assembly_mode);
      r.err_u_h1 = res.norms.err_u_h1;
      r.err_p_l2 = res.norms.err_p_l2;
      r.err_x_h1 = res.norms.err_x_h1;
      r.err_lambda = res.norms.err_lambda;
      r.cf_diff_1norm = res.cf_diff_1norm;
      r.relative_residual = res.relative_residual;
      r.divergence_residual = res.divergence_residual;
      r.pressure_mean = res.pressure_mean;
      r.norms = res.norms;
    } catch (const SingularSystemError& e) {
      throw SingularSystemError(fmt::format("level {} ({}x{} / {}x{}): {}", k, mp.n_fluid, mp.n_fluid,
                                            mp.n_solid, mp.n_solid, e.what()));
    } catch (const DomainViolation& e) {
      throw DomainViolation(fmt::format("level {}: {}", k, e.what()));
    }
    records.push_back(r);
    if (on_level) on_level(r);
  }
  compute_rates(records, plan.test_id);
  return records;
}

std::vector<ConvergenceRecord> run_quadrature_study(const ExperimentPlan& plan,
                                                    const LevelCallback& on_level) {
  std::vector<ConvergenceRecord> records;
  for (std::size_t k = 0; k < plan.schedule.size(); ++k) {
    const MeshPair mp = plan.schedule[k];
    ConvergenceRecord r;
    r.level = static_cast<int>(k);
    r.h_omega = benchmark_fluid_domain().width() / mp.n_fluid;
    r.h_solid = benchmark_solid_domain().width() / mp.n_solid;
    try {
      r.cf_diff_1norm = coupling_difference(mp, plan.coupling);
    } catch (const DomainViolation& e) {
      throw DomainViolation(fmt::format("level {}: {}", k, e.what()));
    }
    records.push_back(r);
    if (on_level) on_level(r);
  }
  compute_rates(records, plan.test_id);
  return records;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return kNaN;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) return kNaN;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return kNaN;
  return (n * sxy - sx * sy) / den;
}

void compute_rates(std::vector<ConvergenceRecord>& records, int test_id) {
  if (test_id != 1 && test_id != 2)
    throw std::invalid_argument(fmt::format("compute_rates: unknown test {}", test_id));
  using Field = double ConvergenceRecord::*;
  const std::pair<Field, Field> columns[] = {{&ConvergenceRecord::err_u_h1, &ConvergenceRecord::rate_u},
                                             {&ConvergenceRecord::err_p_l2, &ConvergenceRecord::rate_p},
                                             {&ConvergenceRecord::err_x_h1, &ConvergenceRecord::rate_x},
                                             {&ConvergenceRecord::err_lambda, &ConvergenceRecord::rate_lambda},
                                             {&ConvergenceRecord::cf_diff_1norm, &ConvergenceRecord::rate_cf}};
  for (auto& r : records)
    for (const auto& [err, rate] : columns) r.*rate = kNaN;

  for (std::size_t k = 1; k < records.size(); ++k) {
    for (const auto& [err, rate] : columns) {
      if (test_id == 1) {
        const double e0 = records[k - 1].*err, e1 = records[k].*err;
        records[k].*rate = (e0 > 0.0 && e1 > 0.0) ? std::log2(e0 / e1) : kNaN;
      } else {
        std::vector<double> h, e;
        for (std::size_t j = 0; j <= k; ++j) {
          h.push_back(records[j].h_solid);
          e.push_back(records[j].*err);
        }
        records[k].*rate = k == 1 ? rate_between(e[0], e[1], h[0], h[1]) : fit_loglog_slope(h, e);
      }
    }
  }
}

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRecord> records) {
  os << "level,h_omega,h_solid,err_u_h1,err_p_l2,err_x_h1,err_lambda,cf_diff_1norm,"
        "rate_u,rate_p,rate_x,rate_lambda,rate_cf\n";
  for (const auto& r : records) {
    os << r.level << ',' << num(r.h_omega) << ',' << num(r.h_solid) << ',' << num(r.err_u_h1) << ','
       << num(r.err_p_l2) << ',' << num(r.err_x_h1) << ',' << num(r.err_lambda) << ','
       << num(r.cf_diff_1norm) << ',' << num(r.rate_u) << ',' << num(r.rate_p) << ','
       << num(r.rate_x) << ',' << num(r.rate_lambda) << ',' << num(r.rate_cf) << '\n';
  }
}

void write_quadrature_csv(std::ostream& os, std::span<const ConvergenceRecord> records) {
  os << "level,h_solid,h_omega,cf_diff_1norm,rate\n";
  for (const auto& r : records)
    os << r.level << ',' << num(r.h_solid) << ',' << num(r.h_omega) << ',' << num(r.cf_diff_1norm)
       << ',' << num(r.rate_cf) << '\n';
}

}  // namespace fdlm

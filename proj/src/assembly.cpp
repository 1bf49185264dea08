#include "fdlm/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "fdlm/geom_intersect.hpp"
#include "fdlm/parallel.hpp"
#include "fdlm/quadrature.hpp"

namespace fdlm {
namespace {

using Local3 = Eigen::Matrix3d;
using Entries = std::vector<std::pair<int, double>>;

int n_dofs(const FiniteElementSpace& s) { return static_cast<int>(s.n_dofs()); }

void require_vector(const FiniteElementSpace& s, const char* who) {
  if (s.value_dim() != 2) throw std::invalid_argument(fmt::format("{}: vector space expected", who));
}

// Emits the 3x3 local block for every component of a vector pair of spaces.
void emit_vector_block(std::vector<Triplet>& out, const FiniteElementSpace& rows,
                       const std::array<int, 3>& row_vertices, const FiniteElementSpace& cols,
                       const std::array<int, 3>& col_vertices, const Local3& local) {
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        out.push_back({rows.dof(c, row_vertices[k]), cols.dof(c, col_vertices[l]), local(k, l)});
}

Eigen::VectorXd accumulate(int n, const Entries& entries) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (const auto& [i, x] : entries) v[i] += x;
  return v;
}

std::array<double, 3> reference_barycentric(const Vec2& q) {
  return {1.0 - q.x() - q.y(), q.x(), q.y()};
}

int locate_or_throw(const Triangulation& mesh, const Vec2& x, std::size_t solid_element) {
  const auto t = locate_point(mesh, x);
  if (!t)
    throw DomainViolation(fmt::format("solid element {} maps ({}, {}) outside the fluid domain",
                                      solid_element, x.x(), x.y()));
  return *t;
}

void check_coupling_spaces(const FiniteElementSpace& multiplier, const FiniteElementSpace& velocity,
                           const SolidMap& xbar) {
  require_vector(multiplier, "coupling");
  require_vector(velocity, "coupling");
  if (xbar.size() != multiplier.mesh().n_triangles())
    throw std::invalid_argument("coupling: one placement map per solid element expected");
}

}  // namespace

Coupling parse_coupling(std::string_view s) {
  if (s == "l2") return Coupling::l2;
  if (s == "h1") return Coupling::h1;
  throw std::invalid_argument(fmt::format("unknown coupling '{}'", s));
}

AssemblyMode parse_assembly_mode(std::string_view s) {
  if (s == "exact") return AssemblyMode::exact;
  if (s == "approx") return AssemblyMode::approx;
  throw std::invalid_argument(fmt::format("unknown assembly mode '{}'", s));
}

std::string_view to_string(Coupling c) { return c == Coupling::l2 ? "l2" : "h1"; }
std::string_view to_string(AssemblyMode m) { return m == AssemblyMode::exact ? "exact" : "approx"; }

void FormParams::validate() const {
  if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("FormParams: alpha, beta must be >= 0");
  if (!(nu > 0.0) || !(kappa > 0.0)) throw std::invalid_argument("FormParams: nu, kappa must be > 0");
  if (gamma != 1.0) throw std::invalid_argument("FormParams: gamma is fixed to 1");
}

SolidMap per_element_map(const Triangulation& solid, const AffineMap& global) {
  return SolidMap(solid.n_triangles(), global);
}

SparseMatrix assemble_vector_laplace(const FiniteElementSpace& space, double mass,
                                     double stiffness) {
  require_vector(space, "assemble_vector_laplace");
  const auto& mesh = space.mesh();
  const QuadratureRule& mass_rule = rule_for_degree(2);
  auto trips = parallel_triplets(mesh.n_triangles(), [&](std::size_t first, std::size_t last,
                                                         std::vector<Triplet>& out) {
    out.reserve((last - first) * 18);
    for (std::size_t t = first; t < last; ++t) {
      const Triangle tri = mesh.triangle(t);
      const double area = std::abs(signed_area(tri));
      Local3 local = Local3::Zero();
      if (mass != 0.0) {
        for (std::size_t q = 0; q < mass_rule.size(); ++q) {
          const auto lam = reference_barycentric(mass_rule.nodes[q]);
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) local(k, l) += mass * area * mass_rule.weights[q] * lam[k] * lam[l];
        }
      }
      if (stiffness != 0.0) {
        const auto g = basis_gradients(tri);
        local += stiffness * area * (g * g.transpose());
      }
      emit_vector_block(out, space, mesh.triangles()[t], space, mesh.triangles()[t], local);
    }
  });
  return SparseMatrix::from_triplets(n_dofs(space), n_dofs(space), trips);
}

SparseMatrix assemble_af(const FiniteElementSpace& velocity, const FormParams& params) {
  params.validate();
  return assemble_vector_laplace(velocity, params.alpha, params.nu);
}

SparseMatrix assemble_as(const FiniteElementSpace& solid, const FormParams& params) {
  params.validate();
  return assemble_vector_laplace(solid, params.beta, params.kappa);
}

SparseMatrix assemble_b(const FiniteElementSpace& velocity, const FiniteElementSpace& pressure) {
  require_vector(velocity, "assemble_b");
  if (pressure.value_dim() != 1) throw std::invalid_argument("assemble_b: scalar pressure expected");
  const auto& fine = velocity.mesh();
  const auto& coarse = pressure.mesh();
  const bool nested = fine.parent_triangles().size() == fine.n_triangles() &&
                      fine.parent_cells_per_side() == coarse.n_cells_per_side() &&
                      fine.n_triangles() == 4 * coarse.n_triangles() &&
                      fine.domain().min == coarse.domain().min &&
                      fine.domain().max == coarse.domain().max;
  if (!nested)
    throw std::invalid_argument("assemble_b: velocity mesh is not the refinement of the pressure mesh");

  auto trips = parallel_triplets(fine.n_triangles(), [&](std::size_t first, std::size_t last,
                                                         std::vector<Triplet>& out) {
    out.reserve((last - first) * 18);
    for (std::size_t t = first; t < last; ++t) {
      const Triangle tri = fine.triangle(t);
      const double area = std::abs(signed_area(tri));
      const auto g = basis_gradients(tri);
      const auto parent = static_cast<std::size_t>(fine.parent_triangles()[t]);
      // div(phi) is constant and psi linear, so the centroid rule is exact
      const auto psi = barycentric(coarse.triangle(parent), centroid(tri));
      const auto& pv = coarse.triangles()[parent];
      const auto& vv = fine.triangles()[t];
      for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c)
          for (int k = 0; k < 3; ++k)
            out.push_back({pressure.dof(0, pv[i]), velocity.dof(c, vv[k]), area * psi[i] * g(k, c)});
    }
  });
  return SparseMatrix::from_triplets(n_dofs(pressure), n_dofs(velocity), trips);
}

SparseMatrix assemble_cs(const FiniteElementSpace& multiplier, const FiniteElementSpace& solid,
                         Coupling coupling) {
  if (multiplier.mesh_ptr() != solid.mesh_ptr() || multiplier.value_dim() != solid.value_dim())
    throw std::invalid_argument("assemble_cs: multiplier and solid spaces must coincide");
  return assemble_vector_laplace(solid, 1.0, coupling == Coupling::h1 ? 1.0 : 0.0);
}

SparseMatrix assemble_cf_exact(const FiniteElementSpace& multiplier,
                               const FiniteElementSpace& velocity, const SolidMap& xbar,
                               Coupling coupling) {
  check_coupling_spaces(multiplier, velocity, xbar);
  const auto& solid = multiplier.mesh();
  const auto& fluid = velocity.mesh();
  const QuadratureRule& rule = rule_for_degree(2);

  auto trips = parallel_triplets(solid.n_triangles(), [&](std::size_t first, std::size_t last,
                                                          std::vector<Triplet>& out) {
    for (std::size_t t = first; t < last; ++t) {
      const Triangle st = solid.triangle(t);
      const AffineMap& map = xbar[t];
      const auto grad_mu = basis_gradients(st);
      const auto scheme = build_composite_scheme(st, map, fluid, rule);
      for (const auto& sub : scheme.subcells) {
        const auto f = static_cast<std::size_t>(sub.fluid_triangle);
        const Triangle ft = fluid.triangle(f);
        const double area = std::abs(signed_area(sub.cell));
        Local3 local = Local3::Zero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Vec2 s = rule.node_on(sub.cell, q);
          const auto mu = barycentric(st, s);
          const auto phi = barycentric(ft, map(s));
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) local(k, l) += area * rule.weights[q] * mu[k] * phi[l];
        }
        if (coupling == Coupling::h1) {
          // grad_s(phi o xbar) = grad xbar^T grad_x phi
          const Eigen::Matrix<double, 3, 2> pulled = basis_gradients(ft) * map.matrix();
          local += area * (grad_mu * pulled.transpose());
        }
        emit_vector_block(out, multiplier, solid.triangles()[t], velocity, fluid.triangles()[f], local);
      }
    }
  });
  return SparseMatrix::from_triplets(n_dofs(multiplier), n_dofs(velocity), trips);
}

SparseMatrix assemble_cf_approx(const FiniteElementSpace& multiplier,
                                const FiniteElementSpace& velocity, const SolidMap& xbar,
                                Coupling coupling) {
  check_coupling_spaces(multiplier, velocity, xbar);
  const auto& solid = multiplier.mesh();
  const auto& fluid = velocity.mesh();
  const QuadratureRule& mass_rule = rule_for_degree(2);
  const QuadratureRule& grad_rule = rule_for_degree(0);

  auto trips = parallel_triplets(solid.n_triangles(), [&](std::size_t first, std::size_t last,
                                                          std::vector<Triplet>& out) {
    for (std::size_t t = first; t < last; ++t) {
      const Triangle st = solid.triangle(t);
      const AffineMap& map = xbar[t];
      const double area = std::abs(signed_area(st));
      const auto& sv = solid.triangles()[t];
      for (std::size_t q = 0; q < mass_rule.size(); ++q) {
        const Vec2 x = map(mass_rule.node_on(st, q));
        const auto f = static_cast<std::size_t>(locate_or_throw(fluid, x, t));
        const auto mu = reference_barycentric(mass_rule.nodes[q]);
        const auto phi = barycentric(fluid.triangle(f), x);
        Local3 local;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) local(k, l) = area * mass_rule.weights[q] * mu[k] * phi[l];
        emit_vector_block(out, multiplier, sv, velocity, fluid.triangles()[f], local);
      }
      if (coupling == Coupling::h1) {
        const auto grad_mu = basis_gradients(st);
        for (std::size_t q = 0; q < grad_rule.size(); ++q) {
          const Vec2 x = map(grad_rule.node_on(st, q));
          const auto f = static_cast<std::size_t>(locate_or_throw(fluid, x, t));
          const Eigen::Matrix<double, 3, 2> pulled = basis_gradients(fluid.triangle(f)) * map.matrix();
          const Local3 local = area * grad_rule.weights[q] * (grad_mu * pulled.transpose());
          emit_vector_block(out, multiplier, sv, velocity, fluid.triangles()[f], local);
        }
      }
    }
  });
  return SparseMatrix::from_triplets(n_dofs(multiplier), n_dofs(velocity), trips);
}

SparseMatrix assemble_cf(const FiniteElementSpace& multiplier, const FiniteElementSpace& velocity,
                         const SolidMap& xbar, Coupling coupling, AssemblyMode mode) {
  return mode == AssemblyMode::exact ? assemble_cf_exact(multiplier, velocity, xbar, coupling)
                                     : assemble_cf_approx(multiplier, velocity, xbar, coupling);
}

double coupling_quadrature_error(const SparseMatrix& cf_exact, const SparseMatrix& cf_approx) {
  return matrix_1norm_diff(cf_exact.transpose(), cf_approx.transpose());
}

Eigen::VectorXd pressure_mean_weights(const FiniteElementSpace& pressure) {
  const auto& mesh = pressure.mesh();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n_dofs(pressure));
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const double a = std::abs(signed_area(mesh.triangle(t)));
    for (const int v : mesh.triangles()[t]) m[pressure.dof(0, v)] += a / 3.0;
  }
  return m;
}

DiscreteSpaces make_spaces(const Rect& fluid, int n_fluid, const Rect& solid, int n_solid) {
  auto coarse = std::make_shared<const Triangulation>(uniform_mesh(fluid, n_fluid, Orientation::right));
  auto fine = std::make_shared<const Triangulation>(midpoint_refine(*coarse));
  auto solid_mesh =
      std::make_shared<const Triangulation>(uniform_mesh(solid, n_solid, Orientation::left));
  auto s = std::make_shared<const FiniteElementSpace>(solid_space(solid_mesh));
  return {std::make_shared<const FiniteElementSpace>(velocity_space(fine)),
          std::make_shared<const FiniteElementSpace>(pressure_space(coarse)), s, s};
}

RhsVectors assemble_rhs(const DiscreteSpaces& spaces, const ManufacturedSolution& exact,
                        const SolidMap& xbar, Coupling coupling, AssemblyMode mode,
                        const FormParams& params) {
  params.validate();
  const auto& V = *spaces.velocity;
  const auto& S = *spaces.solid;
  const auto& L = *spaces.multiplier;
  check_coupling_spaces(L, V, xbar);
  const auto& fluid = V.mesh();
  const auto& solid = S.mesh();
  const QuadratureRule& r6 = rule_for_degree(6);
  const bool h1 = coupling == Coupling::h1;

  // a_f(u, v) - (div v, p) over the fluid mesh
  Entries f_entries = parallel_entries(fluid.n_triangles(), [&](std::size_t first, std::size_t last,
                                                                Entries& out) {
    for (std::size_t t = first; t < last; ++t) {
      const Triangle tri = fluid.triangle(t);
      const double area = std::abs(signed_area(tri));
      const auto g = basis_gradients(tri);
      const auto& vv = fluid.triangles()[t];
      for (std::size_t q = 0; q < r6.size(); ++q) {
        const Vec2 x = r6.node_on(tri, q);
        const double w = area * r6.weights[q];
        const auto lam = reference_barycentric(r6.nodes[q]);
        const Vec2 u = exact.u.value(x);
        const Mat2 gu = exact.u.gradient(x);
        const double p = exact.p(x);
        for (int c = 0; c < 2; ++c)
          for (int k = 0; k < 3; ++k)
            out.emplace_back(V.dof(c, vv[k]),
                             w * (params.alpha * u[c] * lam[k] + params.nu * gu.row(c).dot(g.row(k)) -
                                  p * g(k, c)));
      }
    }
  });

  // + c(lambda, v o xbar) over the solid mesh
  Entries coupling_entries = parallel_entries(solid.n_triangles(), [&](std::size_t first,
                                                                       std::size_t last, Entries& out) {
    auto add = [&](const Vec2& s, const Triangle& ft, std::size_t f, const AffineMap& map, double w,
                   bool mass, bool grad) {
      const Vec2 x = map(s);
      const auto& fv = fluid.triangles()[f];
      if (mass) {
        const auto phi = barycentric(ft, x);
        const Vec2 lam = exact.lambda(s);
        for (int c = 0; c < 2; ++c)
          for (int l = 0; l < 3; ++l) out.emplace_back(V.dof(c, fv[l]), w * lam[c] * phi[l]);
      }
      if (grad) {
        const Eigen::Matrix<double, 3, 2> pulled = basis_gradients(ft) * map.matrix();
        const Mat2 gl = exact.grad_lambda(s);
        for (int c = 0; c < 2; ++c)
          for (int l = 0; l < 3; ++l) out.emplace_back(V.dof(c, fv[l]), w * gl.row(c).dot(pulled.row(l)));
      }
    };
    for (std::size_t t = first; t < last; ++t) {
      const Triangle st = solid.triangle(t);
      const AffineMap& map = xbar[t];
      if (mode == AssemblyMode::exact) {
        const auto scheme = build_composite_scheme(st, map, fluid, r6);
        for (const auto& sub : scheme.subcells) {
          const auto f = static_cast<std::size_t>(sub.fluid_triangle);
          const Triangle ft = fluid.triangle(f);
          const double area = std::abs(signed_area(sub.cell));
          for (std::size_t q = 0; q < r6.size(); ++q)
            add(r6.node_on(sub.cell, q), ft, f, map, area * r6.weights[q], true, h1);
        }
      } else {
        const double area = std::abs(signed_area(st));
        const QuadratureRule& mass_rule = rule_for_degree(2);
        for (std::size_t q = 0; q < mass_rule.size(); ++q) {
          const Vec2 s = mass_rule.node_on(st, q);
          const auto f = static_cast<std::size_t>(locate_or_throw(fluid, map(s), t));
          add(s, fluid.triangle(f), f, map, area * mass_rule.weights[q], true, false);
        }
        if (h1) {
          const Vec2 s = centroid(st);
          const auto f = static_cast<std::size_t>(locate_or_throw(fluid, map(s), t));
          add(s, fluid.triangle(f), f, map, area, false, true);
        }
      }
    }
  });

  // a_s(X, Y) - c(lambda, Y) and c(mu, d) over the solid mesh
  Entries g_entries;
  Entries d_entries = parallel_entries(solid.n_triangles(), [&](std::size_t first, std::size_t last,
                                                                Entries& out) {
    for (std::size_t t = first; t < last; ++t) {
      const Triangle st = solid.triangle(t);
      const double area = std::abs(signed_area(st));
      const auto g = basis_gradients(st);
      const auto& sv = solid.triangles()[t];
      for (std::size_t q = 0; q < r6.size(); ++q) {
        const Vec2 s = r6.node_on(st, q);
        const double w = area * r6.weights[q];
        const auto lam = reference_barycentric(r6.nodes[q]);
        const Vec2 dval = exact.d(s);
        const Mat2 dgrad = exact.grad_d(s);
        for (int c = 0; c < 2; ++c)
          for (int k = 0; k < 3; ++k)
            out.emplace_back(L.dof(c, sv[k]),
                             w * (dval[c] * lam[k] + (h1 ? dgrad.row(c).dot(g.row(k)) : 0.0)));
      }
    }
  });
  g_entries = parallel_entries(solid.n_triangles(), [&](std::size_t first, std::size_t last,
                                                        Entries& out) {
    for (std::size_t t = first; t < last; ++t) {
      const Triangle st = solid.triangle(t);
      const double area = std::abs(signed_area(st));
      const auto g = basis_gradients(st);
      const auto& sv = solid.triangles()[t];
      for (std::size_t q = 0; q < r6.size(); ++q) {
        const Vec2 s = r6.node_on(st, q);
        const double w = area * r6.weights[q];
        const auto lam = reference_barycentric(r6.nodes[q]);
        const Vec2 X = exact.x.value(s);
        const Mat2 gX = exact.x.gradient(s);
        const Vec2 l = exact.lambda(s);
        const Mat2 gl = exact.grad_lambda(s);
        for (int c = 0; c < 2; ++c)
          for (int k = 0; k < 3; ++k) {
            double v = params.beta * X[c] * lam[k] + params.kappa * gX.row(c).dot(g.row(k)) -
                       l[c] * lam[k];
            if (h1) v -= gl.row(c).dot(g.row(k));
            out.emplace_back(S.dof(c, sv[k]), w * v);
          }
      }
    }
  });

  RhsVectors rhs;
  rhs.f = accumulate(n_dofs(V), f_entries) + accumulate(n_dofs(V), coupling_entries);
  rhs.g = accumulate(n_dofs(S), g_entries);
  rhs.d = accumulate(n_dofs(L), d_entries);
  return rhs;
}

}  // namespace fdlm

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fdlm/assembly.hpp"
#include "fdlm/experiments.hpp"
#include "fdlm/geom_intersect.hpp"
#include "oracles.hpp"

using namespace fdlm;

namespace {

DiscreteSpaces benchmark_spaces(MeshPair mp) {
  return make_spaces(benchmark_fluid_domain(), mp.n_fluid, benchmark_solid_domain(), mp.n_solid);
}

Eigen::VectorXd component_ones(const FiniteElementSpace& s, int c) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.n_dofs()));
  for (std::size_t v = 0; v < s.n_vertices(); ++v) e[s.dof(c, static_cast<int>(v))] = 1.0;
  return e;
}

Eigen::VectorXd nodal(const FiniteElementSpace& s, const std::function<Vec2(const Vec2&)>& g) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(s.n_dofs()));
  for (std::size_t v = 0; v < s.n_vertices(); ++v) {
    const Vec2 val = g(s.mesh().vertices()[v]);
    for (int c = 0; c < s.value_dim(); ++c) e[s.dof(c, static_cast<int>(v))] = val[c];
  }
  return e;
}

Eigen::VectorXd random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = u(rng);
  return x;
}

double pairing(const SparseMatrix& c, const Eigen::VectorXd& mu, const Eigen::VectorXd& v) {
  return mu.dot(c.multiply(v));
}

}  // namespace

TEST(Assembly, ParseAndParams) {
  EXPECT_EQ(parse_coupling("h1"), Coupling::h1);
  EXPECT_EQ(parse_assembly_mode("approx"), AssemblyMode::approx);
  EXPECT_THROW(parse_coupling("h2"), std::invalid_argument);
  EXPECT_THROW(parse_assembly_mode(""), std::invalid_argument);
  EXPECT_THROW(FormParams({0.0, 0.0, 0.0, 1.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_THROW(FormParams({-1.0, 1.0, 0.0, 1.0, 1.0}).validate(), std::invalid_argument);
}

TEST(Assembly, MassAndStiffness) {
  const auto sp = benchmark_spaces({16, 8});
  const auto& v = *sp.velocity;
  const SparseMatrix m = assemble_vector_laplace(v, 1.0, 0.0);
  const Eigen::VectorXd e0 = component_ones(v, 0);
  EXPECT_NEAR(e0.dot(m.multiply(e0)), 16.0, 1e-12);

  const SparseMatrix k = assemble_af(v, FormParams{});
  EXPECT_LT(k.multiply(e0).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_LT(k.multiply(component_ones(v, 1)).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_LT(symmetry_defect(k), 1e-14);
  EXPECT_LT(symmetry_defect(m), 1e-14);

  // |grad (y, -x)|^2 = 2 on a domain of area 16
  const Eigen::VectorXd rot = nodal(v, [](const Vec2& x) { return Vec2(x.y(), -x.x()); });
  EXPECT_NEAR(rot.dot(k.multiply(rot)), 32.0, 1e-10);

  // nonlinear field: energy against elementwise gradients of the interpolant
  const Eigen::VectorXd w = nodal(v, [](const Vec2& x) { return Vec2(std::sin(x.x()) * x.y(), x.x() * x.x()); });
  double ref = 0.0;
  for (std::size_t t = 0; t < v.mesh().n_triangles(); ++t)
    ref += oracle::duffy_integrate(
        [&](const Vec2&) { return oracle::restrict_to(v, w, t).gradient().squaredNorm(); }, v.mesh().triangle(t), 2);
  EXPECT_NEAR(w.dot(k.multiply(w)), ref, 1e-10 * ref);

  // mass matrix against the collapsed Gauss oracle
  double mref = 0.0;
  for (std::size_t t = 0; t < v.mesh().n_triangles(); ++t) {
    const auto lt = oracle::restrict_to(v, w, t);
    mref += oracle::duffy_integrate([&](const Vec2& x) { return lt.value(x).squaredNorm(); }, v.mesh().triangle(t), 3);
  }
  EXPECT_NEAR(w.dot(m.multiply(w)), mref, 1e-11 * mref);
}

TEST(Assembly, SolidOperator) {
  const auto sp = benchmark_spaces({16, 8});
  const auto& s = *sp.solid;
  const Eigen::VectorXd e0 = component_ones(s, 0);
  EXPECT_LT(assemble_as(s, FormParams{}).multiply(e0).lpNorm<Eigen::Infinity>(), 1e-12);
  FormParams with_mass;
  with_mass.beta = 1.0;
  EXPECT_NEAR(e0.dot(assemble_as(s, with_mass).multiply(e0)), 1.0, 1e-13);
}

TEST(Assembly, Divergence) {
  const auto sp = benchmark_spaces({16, 8});
  const SparseMatrix b = assemble_b(*sp.velocity, *sp.pressure);
  EXPECT_EQ(b.n_rows(), static_cast<int>(sp.pressure->n_dofs()));
  EXPECT_EQ(b.n_cols(), static_cast<int>(sp.velocity->n_dofs()));
  const Eigen::VectorXd c = nodal(*sp.velocity, [](const Vec2&) { return Vec2(1.0, 0.0); });
  EXPECT_LT(b.multiply(c).lpNorm<Eigen::Infinity>(), 1e-13);
  const Eigen::VectorXd radial = nodal(*sp.velocity, [](const Vec2& x) { return x; });
  EXPECT_NEAR(b.multiply(radial).sum(), 32.0, 1e-12);
  // a single pressure hat: int 2 psi_i = 2 * int psi_i
  const Eigen::VectorXd mw = pressure_mean_weights(*sp.pressure);
  EXPECT_NEAR(mw.sum(), 16.0, 1e-12);
  const Eigen::VectorXd brad = b.multiply(radial);
  for (Eigen::Index i = 0; i < brad.size(); ++i) EXPECT_NEAR(brad[i], 2.0 * mw[i], 1e-13);

  const auto other = make_spaces(benchmark_fluid_domain(), 8, benchmark_solid_domain(), 8);
  EXPECT_THROW(assemble_b(*sp.velocity, *other.pressure), std::invalid_argument);
}

TEST(Assembly, SolidCoupling) {
  const auto sp = benchmark_spaces({16, 8});
  const auto& s = *sp.solid;
  const Eigen::VectorXd ones = component_ones(s, 0) + component_ones(s, 1);
  const SparseMatrix l2 = assemble_cs(*sp.multiplier, s, Coupling::l2);
  const SparseMatrix h1 = assemble_cs(*sp.multiplier, s, Coupling::h1);
  EXPECT_NEAR(ones.dot(l2.multiply(ones)), 2.0, 1e-13);
  EXPECT_NEAR(ones.dot(h1.multiply(ones)), 2.0, 1e-13);
  EXPECT_LT(symmetry_defect(h1), 1e-14);

  const Eigen::VectorXd ex = nodal(s, [](const Vec2& x) { return Vec2(std::exp(x.x()), std::exp(x.y())); });
  const double h = 1.0 / 8;
  EXPECT_NEAR(ones.dot(l2.multiply(ex)), 2.0 * (std::exp(1.0) - 1.0), h * h);
  // h1 pairing with a constant multiplier only sees the mass part
  EXPECT_NEAR(ones.dot(h1.multiply(ex)), ones.dot(l2.multiply(ex)), 1e-13);
}

TEST(Assembly, CouplingReproducesConstantsAndLinears) {
  const auto sp = benchmark_spaces({16, 8});
  const SolidMap xbar = per_element_map(sp.solid->mesh(), immersed_square_map());
  const Eigen::VectorXd mu = component_ones(*sp.multiplier, 0);
  const Eigen::VectorXd one = nodal(*sp.velocity, [](const Vec2&) { return Vec2(1.0, 0.0); });
  const Eigen::VectorXd lin = nodal(*sp.velocity, [](const Vec2& x) { return Vec2(x.x(), 0.0); });
  for (auto c : {Coupling::l2, Coupling::h1})
    for (auto m : {AssemblyMode::exact, AssemblyMode::approx}) {
      const SparseMatrix cf = assemble_cf(*sp.multiplier, *sp.velocity, xbar, c, m);
      EXPECT_EQ(cf.n_rows(), static_cast<int>(sp.multiplier->n_dofs()));
      EXPECT_EQ(cf.n_cols(), static_cast<int>(sp.velocity->n_dofs()));
      EXPECT_NEAR(pairing(cf, mu, one), 1.0, 1e-13);
      // int_B (-0.62 + 2 s1) ds
      EXPECT_NEAR(pairing(cf, mu, lin), 0.38, 1e-13);
    }
}

TEST(Assembly, CouplingAgainstCompositeOracle) {
  std::mt19937_64 rng(2024);
  for (const MeshPair mp : {MeshPair{16, 8}, MeshPair{8, 8}, MeshPair{16, 23}}) {
    const auto sp = benchmark_spaces(mp);
    const AffineMap map = immersed_square_map();
    const SolidMap xbar = per_element_map(sp.solid->mesh(), map);
    for (auto c : {Coupling::l2, Coupling::h1}) {
      const SparseMatrix cf = assemble_cf_exact(*sp.multiplier, *sp.velocity, xbar, c);
      for (int trial = 0; trial < 3; ++trial) {
        const Eigen::VectorXd mu = random_vector(sp.multiplier->n_dofs(), rng);
        const Eigen::VectorXd v = random_vector(sp.velocity->n_dofs(), rng);
        const double ref = oracle::coupling_pairing(*sp.multiplier, mu, *sp.velocity, v, map, c);
        EXPECT_NEAR(pairing(cf, mu, v), ref, 1e-11 * std::abs(ref))
            << mp.n_fluid << "/" << mp.n_solid << " " << to_string(c);
        if (trial == 0) {
          // the oracle separates the two variants
          const auto approx = assemble_cf_approx(*sp.multiplier, *sp.velocity, xbar, c);
          EXPECT_GT(std::abs(pairing(approx, mu, v) - ref), 1e-8 * std::abs(ref));
        }
      }
    }
  }
}

TEST(Assembly, NestedElementsMakeBothVariantsEqual) {
  const auto sp = benchmark_spaces({16, 8});
  // the whole solid lands strictly inside one refined fluid triangle
  const AffineMap tiny(Mat2::Identity() * 0.01, Vec2(0.53, 0.51));
  const SolidMap xbar = per_element_map(sp.solid->mesh(), tiny);
  for (auto c : {Coupling::l2, Coupling::h1}) {
    const auto a = assemble_cf_exact(*sp.multiplier, *sp.velocity, xbar, c);
    const auto b = assemble_cf_approx(*sp.multiplier, *sp.velocity, xbar, c);
    EXPECT_LE(coupling_quadrature_error(a, b), 1e-13);
    EXPECT_LE(matrix_1norm_diff(a, b), 1e-13);
  }
}

TEST(Assembly, MatchingGridsMakeBothVariantsEqual) {
  // solid cells coincide with refined fluid cells; the reflection turns the left
  // diagonals of the solid mesh into the right diagonals of the fluid mesh
  const auto sp = benchmark_spaces({16, 8});
  Mat2 reflect;
  reflect << -1.0, 0.0, 0.0, 1.0;
  const SolidMap xbar = per_element_map(sp.solid->mesh(), AffineMap(reflect, Vec2(1.0, 0.0)));
  for (auto c : {Coupling::l2, Coupling::h1}) {
    const auto a = assemble_cf_exact(*sp.multiplier, *sp.velocity, xbar, c);
    const auto b = assemble_cf_approx(*sp.multiplier, *sp.velocity, xbar, c);
    EXPECT_LE(coupling_quadrature_error(a, b), 1e-13);
  }
}

TEST(Assembly, DifferenceIsTheQuadratureErrorFunctional) {
  const auto sp = benchmark_spaces({16, 8});
  const AffineMap map = immersed_square_map();
  const SolidMap xbar = per_element_map(sp.solid->mesh(), map);
  const auto exact = assemble_cf_exact(*sp.multiplier, *sp.velocity, xbar, Coupling::l2);
  const auto approx = assemble_cf_approx(*sp.multiplier, *sp.velocity, xbar, Coupling::l2);
  const auto& solid = sp.solid->mesh();
  const auto& fluid = sp.velocity->mesh();

  // pick a few (multiplier, velocity) pairs with a nonzero entry
  int checked = 0;
  for (int row = 0; row < exact.n_rows() && checked < 12; row += 7) {
    for (int k = exact.row_offsets()[row]; k < exact.row_offsets()[row + 1] && checked < 12; k += 3) {
      const int col = exact.col_indices()[k];
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sp.multiplier->n_dofs()));
      Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sp.velocity->n_dofs()));
      mu[row] = 1.0;
      v[col] = 1.0;
      double sum = 0.0;
      for (std::size_t t = 0; t < solid.n_triangles(); ++t) {
        const auto mu_t = oracle::restrict_to(*sp.multiplier, mu, t);
        const auto scheme = build_composite_scheme(solid.triangle(t), map, fluid, rule_for_degree(2));
        std::vector<Triangle> cells;
        for (const auto& sc : scheme.subcells) cells.push_back(sc.cell);
        auto integrand = [&](const Vec2& s) {
          const Vec2 x = map(s);
          const auto ft = locate_point(fluid, x);
          return mu_t.value(s).dot(oracle::restrict_to(*sp.velocity, v, *ft).value(x));
        };
        sum += quad_error_functional(integrand, solid.triangle(t), rule_for_degree(2), cells, rule_for_degree(6));
      }
      EXPECT_NEAR(exact.at(row, col) - approx.at(row, col), sum, 1e-14);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 12);
}

TEST(Assembly, RegressionBaseline) {
  EXPECT_NEAR(coupling_difference({16, 8}, Coupling::l2), 0.012082215416666672, 1e-15);
  EXPECT_NEAR(coupling_difference({16, 8}, Coupling::h1), 11.089624123750001, 1e-11);
}

TEST(Assembly, ZeroSolutionGivesZeroRhs) {
  const auto sp = benchmark_spaces({16, 8});
  const ManufacturedSolution zero = zero_solution(immersed_square_map());
  const SolidMap xbar = per_element_map(sp.solid->mesh(), zero.xbar);
  for (auto m : {AssemblyMode::exact, AssemblyMode::approx}) {
    const auto rhs = assemble_rhs(sp, zero, xbar, Coupling::h1, m, FormParams{});
    EXPECT_EQ(rhs.f.norm(), 0.0);
    EXPECT_EQ(rhs.g.norm(), 0.0);
    EXPECT_EQ(rhs.d.norm(), 0.0);
  }
}

TEST(Assembly, ConstraintRhsForConstantMultiplier) {
  const auto sp = benchmark_spaces({16, 8});
  const ManufacturedSolution ex = immersed_square_solution();
  const SolidMap xbar = per_element_map(sp.solid->mesh(), ex.xbar);
  const auto rhs = assemble_rhs(sp, ex, xbar, Coupling::l2, AssemblyMode::exact, FormParams{});
  const auto& solid = sp.solid->mesh();
  for (int c = 0; c < 2; ++c) {
    double ref = 0.0;
    for (std::size_t t = 0; t < solid.n_triangles(); ++t)
      ref += oracle::duffy_integrate([&](const Vec2& s) { return ex.d(s)[c]; }, solid.triangle(t), 8);
    const double got = component_ones(*sp.multiplier, c).dot(rhs.d);
    EXPECT_NEAR(got, ref, 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Assembly, WeakRhsMatchesStrongForm) {
  const ManufacturedSolution ex = immersed_square_solution();
  for (const MeshPair mp : {MeshPair{16, 8}, MeshPair{32, 16}}) {
    const auto sp = benchmark_spaces(mp);
    const SolidMap xbar = per_element_map(sp.solid->mesh(), ex.xbar);
    const auto rhs = assemble_rhs(sp, ex, xbar, Coupling::l2, AssemblyMode::exact, FormParams{});
    const Eigen::VectorXd w = nodal(*sp.velocity, [](const Vec2& x) {
      const double b = (4.0 - x.x() * x.x()) * (4.0 - x.y() * x.y());
      return Vec2(b * std::cos(x.y()), b * std::sin(x.x()));
    });
    const double strong = oracle::strong_form_functional(*sp.velocity, w, ex, benchmark_solid_domain());
    const double h = 4.0 / mp.n_fluid;
    EXPECT_NEAR(w.dot(rhs.f), strong, h * h * std::abs(strong));
  }
}

TEST(Assembly, SpacesAreConsistent) {
  const auto sp = benchmark_spaces({16, 8});
  EXPECT_EQ(sp.multiplier, sp.solid);
  EXPECT_EQ(sp.velocity->mesh().n_cells_per_side(), 32);
  EXPECT_EQ(sp.pressure->mesh().n_cells_per_side(), 16);
  EXPECT_EQ(sp.solid->mesh().orientation(), Orientation::left);
  const FiniteElementSpace other = solid_space(std::make_shared<const Triangulation>(
      uniform_mesh(benchmark_solid_domain(), 8, Orientation::left)));
  EXPECT_THROW(assemble_cs(other, *sp.solid, Coupling::l2), std::invalid_argument);
}

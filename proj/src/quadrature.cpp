#include "fdlm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fdlm {
namespace {

QuadratureRule centroid_rule(int degree) { return {{Vec2(1.0 / 3.0, 1.0 / 3.0)}, {1.0}, degree}; }

QuadratureRule edge_midpoint_rule() {
  return {{Vec2(0.5, 0.0), Vec2(0.5, 0.5), Vec2(0.0, 0.5)}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 2};
}

// Dunavant's 12-point rule, exact to degree 6.
QuadratureRule dunavant6() {
  QuadratureRule r;
  r.exactness_degree = 6;
  auto add_orbit3 = [&r](double a, double b, double w) {
    // barycentric (a, b, b) and permutations; reference coords are (l1, l2)
    r.nodes.emplace_back(b, b);
    r.nodes.emplace_back(a, b);
    r.nodes.emplace_back(b, a);
    for (int k = 0; k < 3; ++k) r.weights.push_back(w);
  };
  auto add_orbit6 = [&r](double a, double b, double c, double w) {
    const double bary[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
    for (const auto& l : bary) {
      r.nodes.emplace_back(l[1], l[2]);
      r.weights.push_back(w);
    }
  };
  add_orbit3(0.501426509658179, 0.249286745170910, 0.116786275726379);
  add_orbit3(0.873821971016996, 0.063089014491502, 0.050844906370207);
  add_orbit6(0.053145049844817, 0.310352451033784, 0.636502499121399, 0.082851075618374);
  // Renormalize away the 1e-15 drift of the tabulated weights.
  double sum = 0.0;
  for (double w : r.weights) sum += w;
  for (double& w : r.weights) w /= sum;
  return r;
}

}  // namespace

const QuadratureRule& rule_for_degree(int degree) {
  static const QuadratureRule r0 = centroid_rule(0);
  static const QuadratureRule r1 = centroid_rule(1);
  static const QuadratureRule r2 = edge_midpoint_rule();
  static const QuadratureRule r6 = dunavant6();
  switch (degree) {
    case 0: return r0;
    case 1: return r1;
    case 2: return r2;
    case 6: return r6;
    default:
      throw std::invalid_argument(fmt::format("rule_for_degree: unsupported degree {}", degree));
  }
}

double integrate(const std::function<double(const Vec2&)>& f, const Triangle& t,
                 const QuadratureRule& rule) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(rule.node_on(t, k));
  return std::abs(signed_area(t)) * sum;
}

double quad_error_functional(const std::function<double(const Vec2&)>& f, const Triangle& t,
                             const QuadratureRule& rule, std::span<const Triangle> oracle_cells,
                             const QuadratureRule& oracle_rule) {
  double exact = 0.0;
  for (const auto& cell : oracle_cells) exact += integrate(f, cell, oracle_rule);
  return exact - integrate(f, t, rule);
}

}  // namespace fdlm

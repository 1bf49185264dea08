#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fdlm/geometry.hpp"

namespace fdlm {

/// Quadrature on the reference triangle {(0,0),(1,0),(0,1)}.
///
/// Weights are normalized to sum to one, so the physical integral over a triangle T
/// is approximated by |T| * sum_k w_k f(F_T(q_k)).
struct QuadratureRule {
  std::vector<Vec2> nodes;  ///< reference coordinates
  std::vector<double> weights;
  int exactness_degree = 0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  /// Physical location of node k on triangle t.
  [[nodiscard]] Vec2 node_on(const Triangle& t, std::size_t k) const {
    const Vec2& q = nodes[k];
    return t[0] + q.x() * (t[1] - t[0]) + q.y() * (t[2] - t[0]);
  }
};

/// Supported degrees: 0 and 1 (centroid), 2 (edge midpoints), 6 (12-point).
const QuadratureRule& rule_for_degree(int degree);

/// |T| * sum_k w_k f(q_k) on a physical triangle.
double integrate(const std::function<double(const Vec2&)>& f, const Triangle& t,
                 const QuadratureRule& rule);

/// Quadrature error E_T(f) = int_T f - |T| sum_k w_k f(q_k).
///
/// The exact integral is taken from `oracle_rule` applied on each of `oracle_cells`,
/// which must tile T (pass {T} for a single high-order rule).
double quad_error_functional(const std::function<double(const Vec2&)>& f, const Triangle& t,
                             const QuadratureRule& rule, std::span<const Triangle> oracle_cells,
                             const QuadratureRule& oracle_rule);

}  // namespace fdlm

#pragma once

#include <vector>

namespace colltherm {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule computed by Newton iteration on the Legendre recurrence.
/// Rules are cached per n; the returned reference stays valid.
const GaussLegendreRule& gauss_legendre(int n);

/// Quadrature over the unit interval for integrands that may be singular at
/// either endpoint. Each node carries u and 1 - u separately so that points
/// very close to u = 1 keep full relative precision in 1 - u.
struct UnitIntervalRule {
  std::vector<double> u;
  std::vector<double> one_minus_u;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre on panels graded geometrically towards both
/// endpoints: breakpoints 2^-j and 1 - 2^-j for j = 1..levels.
UnitIntervalRule graded_unit_rule(int nodes_per_panel, int levels = 40);

}  // namespace colltherm

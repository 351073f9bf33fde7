#include "colltherm/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "colltherm/errors.hpp"

namespace colltherm {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(n));
  return *slot;
}

UnitIntervalRule graded_unit_rule(int nodes_per_panel, int levels) {
  if (levels < 1) throw InvalidArgument("graded rule needs at least one level");
  const GaussLegendreRule& base = gauss_legendre(nodes_per_panel);

  // Panels of the half interval [0, 1/2]: [0, 2^-L], [2^-L, 2^-(L-1)], ..., [1/4, 1/2].
  std::vector<double> breaks{0.0};
  for (int j = levels; j >= 1; --j) breaks.push_back(std::ldexp(1.0, -j));

  UnitIntervalRule rule;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double a = breaks[p];
      const double b = breaks[p + 1];
      for (std::size_t k = 0; k < base.nodes.size(); ++k) {
        const double s = a + 0.5 * (b - a) * (base.nodes[k] + 1.0);
        const double w = 0.5 * (b - a) * base.weights[k];
        // side 0: s is u; side 1: s is 1 - u.
        rule.u.push_back(side == 0 ? s : 1.0 - s);
        rule.one_minus_u.push_back(side == 0 ? 1.0 - s : s);
        rule.weights.push_back(w);
      }
    }
  }
  return rule;
}

}  // namespace colltherm

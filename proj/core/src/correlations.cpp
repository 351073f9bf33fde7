#include "colltherm/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "colltherm/errors.hpp"

namespace colltherm {

namespace {

// Entropy of an unnormalized positive 2x2 matrix m, scaled by its trace:
// tr(m) S(m / tr m).
double weighted_qubit_entropy(const ComplexMatrix& m) {
  const double t = m.trace().real();
  if (t <= 1e-300) return 0.0;
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, 0.25 * t * t - det));
  double h = 0.0;
  for (double l : {0.5 * t + disc, 0.5 * t - disc}) {
    const double p = l / t;
    if (p > 1e-300) h -= p * std::log(p);
  }
  return t * h;
}

struct Blocks {
  ComplexMatrix other;                  // marginal of the unmeasured qubit
  std::array<ComplexMatrix, 3> pauli;   // tr_measured[(sigma_i x I) rho], ordered to the unmeasured qubit
};

Blocks conditional_blocks(const BipartiteState& s, MeasuredSide side) {
  const std::array<int, 2> dims{2, 2};
  const int measured = side == MeasuredSide::A ? 0 : 1;
  const std::array<int, 1> keep{1 - measured};
  const std::array<int, 1> target{measured};
  const ComplexMatrix& rho = s.rho().matrix();
  Blocks b;
  b.other = partial_trace(rho, dims, keep);
  const std::array<ComplexMatrix, 3> sig{pauli_x(), pauli_y(), pauli_z()};
  const ComplexMatrix id = identity(2);
  for (int i = 0; i < 3; ++i) {
    b.pauli[i] = partial_trace(sandwich_on_subsystems(rho, dims, sig[i], id, target), dims, keep);
  }
  return b;
}

double conditional_entropy(const Blocks& b, double theta, double phi) {
  const double n[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  const ComplexMatrix nt = n[0] * b.pauli[0] + n[1] * b.pauli[1] + n[2] * b.pauli[2];
  return weighted_qubit_entropy(0.5 * (b.other + nt)) + weighted_qubit_entropy(0.5 * (b.other - nt));
}

struct SimplexResult {
  double theta;
  double phi;
  double value;
  bool converged;
};

template <class F>
SimplexResult nelder_mead(const F& f, double theta, double phi, double step, const DiscordOptions& opt) {
  std::array<std::array<double, 2>, 3> x{{{theta, phi}, {theta + step, phi}, {theta, phi + step}}};
  std::array<double, 3> fx{};
  for (int i = 0; i < 3; ++i) fx[i] = f(x[i][0], x[i][1]);

  auto at = [&](const std::array<double, 2>& c, const std::array<double, 2>& w, double t) {
    return std::array<double, 2>{c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])};
  };

  for (int it = 0; it < opt.max_iterations; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const auto best = x[idx[0]];
    const auto worst = x[idx[2]];
    double diameter = 0.0;
    for (int i = 1; i < 3; ++i) {
      diameter = std::max(diameter, std::hypot(x[idx[i]][0] - best[0], x[idx[i]][1] - best[1]));
    }
    if (diameter < opt.simplex_tolerance || fx[idx[2]] - fx[idx[0]] < 1e-16) {
      return {best[0], best[1], fx[idx[0]], true};
    }

    const std::array<double, 2> c{0.5 * (best[0] + x[idx[1]][0]), 0.5 * (best[1] + x[idx[1]][1])};
    const auto xr = at(c, worst, -1.0);
    const double fr = f(xr[0], xr[1]);
    if (fr < fx[idx[0]]) {
      const auto xe = at(c, worst, -2.0);
      const double fe = f(xe[0], xe[1]);
      if (fe < fr) {
        x[idx[2]] = xe;
        fx[idx[2]] = fe;
      } else {
        x[idx[2]] = xr;
        fx[idx[2]] = fr;
      }
      continue;
    }
    if (fr < fx[idx[1]]) {
      x[idx[2]] = xr;
      fx[idx[2]] = fr;
      continue;
    }
    const auto xc = fr < fx[idx[2]] ? at(c, worst, -0.5) : at(c, worst, 0.5);
    const double fc = f(xc[0], xc[1]);
    if (fc < std::min(fr, fx[idx[2]])) {
      x[idx[2]] = xc;
      fx[idx[2]] = fc;
      continue;
    }
    for (int i = 1; i < 3; ++i) {
      x[idx[i]] = at(best, x[idx[i]], 0.5);
      fx[idx[i]] = f(x[idx[i]][0], x[idx[i]][1]);
    }
  }
  const int b = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return {x[b][0], x[b][1], fx[b], false};
}

}  // namespace

BipartiteState::BipartiteState(DensityMatrix rho, std::array<std::string, 2> labels)
    : rho_(std::move(rho)), labels_(std::move(labels)) {
  if (rho_.dims() != std::vector<int>{2, 2}) throw InvalidArgument("bipartite state must be two qubits");
}

BipartiteState pair_state(const DensityMatrix& rho, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= rho.subsystem_count() || j >= rho.subsystem_count()) {
    throw InvalidArgument("pair_state needs two distinct subsystem indices");
  }
  // partial_trace keeps subsystems in ascending order; swap back if needed.
  const std::array<int, 2> keep{std::min(i, j), std::max(i, j)};
  DensityMatrix pair = partial_trace(rho, keep);
  if (i > j) {
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    pair = DensityMatrix(swap * pair.matrix() * swap, {2, 2});
  }
  return BipartiteState(std::move(pair), {std::to_string(i), std::to_string(j)});
}

double mutual_information(const BipartiteState& s) {
  const std::array<int, 1> a{0};
  const std::array<int, 1> b{1};
  return von_neumann_entropy(partial_trace(s.rho(), a)) + von_neumann_entropy(partial_trace(s.rho(), b)) -
         von_neumann_entropy(s.rho());
}

double measured_conditional_entropy(const BipartiteState& s, MeasuredSide side, double theta, double phi) {
  return conditional_entropy(conditional_blocks(s, side), theta, phi);
}

double discord(const BipartiteState& s, MeasuredSide side, const DiscordOptions& options) {
  if (options.theta_points < 2 || options.phi_points < 1) throw InvalidArgument("discord grid too small");
  const Blocks blocks = conditional_blocks(s, side);
  auto f = [&](double theta, double phi) { return conditional_entropy(blocks, theta, phi); };

  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  const double dtheta = std::numbers::pi / (options.theta_points - 1);
  const double dphi = 2.0 * std::numbers::pi / options.phi_points;
  for (int i = 0; i < options.theta_points; ++i) {
    for (int j = 0; j < options.phi_points; ++j) {
      const double v = f(i * dtheta, j * dphi);
      if (v < best) {
        best = v;
        best_theta = i * dtheta;
        best_phi = j * dphi;
      }
    }
  }

  const SimplexResult refined = nelder_mead(f, best_theta, best_phi, 0.5 * std::min(dtheta, dphi), options);
  if (!refined.converged) throw NumericalError("discord: simplex refinement did not converge");
  const double min_cond = std::min(best, refined.value);

  const std::array<int, 1> measured{side == MeasuredSide::A ? 0 : 1};
  const double d = von_neumann_entropy(partial_trace(s.rho(), measured)) - von_neumann_entropy(s.rho()) + min_cond;
  if (d < 0.0) {
    if (d < -1e-8) throw NumericalError("discord: negative value " + std::to_string(d));
    return 0.0;
  }
  return d;
}

}  // namespace colltherm

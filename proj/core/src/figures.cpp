#include "colltherm/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "colltherm/correlations.hpp"
#include "colltherm/fisher.hpp"
#include "colltherm/parallel.hpp"

namespace colltherm {

namespace {

bool is_standard(const CollisionSpec& spec, InteractionKind kind, const DensityMatrix& prep) {
  return spec.kind == kind && std::abs(spec.g_tau - 0.5 * std::numbers::pi) < 1e-12 &&
         max_abs(spec.ancilla_prep.matrix() - prep.matrix()) < 1e-12;
}

template <class Cell, class F>
std::vector<Cell> sweep(const Axis& gamma_tau, const Axis& nbar, int threads, F&& cell) {
  gamma_tau.validate();
  nbar.validate();
  const auto gt = gamma_tau.values();
  const auto nb = nbar.values();
  std::vector<Cell> out(gt.size() * nb.size());
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    out[idx] = cell(gt[idx % gt.size()], nb[idx / gt.size()]);
  });
  return out;
}

}  // namespace

void Axis::validate() const {
  if (points < 2) throw InvalidArgument("grid axis needs at least two points");
  if (!(max > min) || !std::isfinite(min) || !std::isfinite(max)) throw InvalidArgument("grid axis needs min < max");
  if (log && !(min > 0.0)) throw InvalidArgument("log-spaced axis needs positive bounds");
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    v[i] = log ? std::pow(10.0, std::log10(min) + f * (std::log10(max) - std::log10(min)))
               : min + f * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

Axis default_gamma_tau_axis() { return {1e-2, 10.0, 48, true}; }
Axis default_nbar_axis() { return {0.1, 3.0, 48, false}; }
Axis fig3_gamma_tau_axis() { return {1e-3, 1e3, 121, true}; }

CollisionSpec standard_zz() { return {InteractionKind::ZZ, 0.5 * std::numbers::pi, ancilla_plus_x()}; }
CollisionSpec standard_swap() { return {InteractionKind::Swap, 0.5 * std::numbers::pi, ancilla_ground()}; }

double per_ancilla_increment(const EnvironmentParams& env, const CollisionSpec& spec, double tau) {
  env.validate();
  const double rate = env.effective_rate(tau);
  if (is_standard(spec, InteractionKind::ZZ, ancilla_plus_x())) return delta_analytic(env.nbar, rate);
  if (is_standard(spec, InteractionKind::Swap, ancilla_ground())) return swap_increment_analytic(env.nbar, rate);
  const std::array<double, 1> taus{tau};
  return chain_qfi(env, spec, 2, taus) - thermal_fi_nbar(env.nbar);
}

double average_increment(const WtdSpec& wtd, double nbar, double gamma, const CollisionSpec& spec,
                         const QuadratureOptions& options) {
  const EnvironmentParams env{nbar, gamma};
  env.validate();
  return average_over_wtd(wtd, [&](double tau) { return per_ancilla_increment(env, spec, tau); }, options);
}

std::vector<Fig1aCell> sweep_fig1a(const CollisionSpec& spec, const Axis& gamma_tau, const Axis& nbar, int threads) {
  return sweep<Fig1aCell>(gamma_tau, nbar, threads, [&](double gt, double n) {
    const double inc = per_ancilla_increment({n, gt}, spec, 1.0);
    return Fig1aCell{gt, n, inc / thermal_fi_nbar(n)};
  });
}

std::vector<Fig1bCell> sweep_fig1b(const CollisionSpec& spec, const Axis& gamma_tau, const Axis& nbar, int threads,
                                   bool with_discord) {
  return sweep<Fig1bCell>(gamma_tau, nbar, threads, [&](double gt, double n) {
    const EnvironmentParams env{n, gt};
    const std::array<double, 1> taus{1.0};
    const ChainResult chain = run_chain(env, spec, 2, taus);
    const BipartiteState pair = pair_state(chain.joint_ancillas, 0, 1);
    Fig1bCell c{gt, n, mutual_information(pair), 0.0, 0.0, per_ancilla_increment(env, spec, 1.0) / thermal_fi_nbar(n)};
    if (with_discord) {
      c.discord_a = discord(pair, MeasuredSide::A);
      c.discord_b = discord(pair, MeasuredSide::B);
    }
    return c;
  });
}

std::vector<Fig1cCell> sweep_fig1c(const CollisionSpec& spec, int n_ancillas, const Axis& gamma_tau, const Axis& nbar,
                                   int threads) {
  if (n_ancillas < 1) throw InvalidArgument("need at least one ancilla");
  return sweep<Fig1cCell>(gamma_tau, nbar, threads, [&](double gt, double n) {
    const EnvironmentParams env{n, gt};
    const std::vector<double> taus(static_cast<std::size_t>(n_ancillas - 1), 1.0);
    const double r = ratio_R(chain_qfi_matrix(env, spec, n_ancillas, taus));
    return Fig1cCell{gt, n, r, per_ancilla_increment(env, spec, 1.0) / thermal_fi_nbar(n)};
  });
}

std::vector<Fig2Cell> sweep_fig2(const CollisionSpec& spec, const WtdSpec& wtd, const Axis& gamma_tau,
                                 const Axis& nbar, int threads) {
  return sweep<Fig2Cell>(gamma_tau, nbar, threads, [&](double gt, double n) {
    WtdSpec w = wtd;
    w.mean_tau = 1.0;
    return Fig2Cell{gt, n, average_increment(w, n, gt, spec), per_ancilla_increment({n, gt}, spec, 1.0)};
  });
}

Fig3Data sweep_fig3(const CollisionSpec& spec, double nbar, const std::vector<double>& weibull_shapes,
                    const Axis& gamma_tau, int threads) {
  Fig3Data data;
  data.gamma_tau = gamma_tau.values();
  data.nbar = nbar;
  data.curves.push_back({WtdSpec{WtdKind::Deterministic, 1.0, 1.0}, {}});
  for (double k : weibull_shapes) data.curves.push_back({WtdSpec{WtdKind::Weibull, k, 1.0}, {}});
  for (auto& c : data.curves) c.wtd.validate();

  const std::size_t n_gt = data.gamma_tau.size();
  for (auto& c : data.curves) c.ratio.assign(n_gt, 0.0);
  const double fth = thermal_fi_nbar(nbar);
  parallel_for(n_gt * data.curves.size(), threads, [&](std::size_t idx) {
    Fig3Curve& c = data.curves[idx / n_gt];
    const std::size_t i = idx % n_gt;
    c.ratio[i] = average_increment(c.wtd, nbar, data.gamma_tau[i], spec) / fth;
  });
  return data;
}

std::vector<PdfCurve> fig3_inset(const std::vector<double>& weibull_shapes, double t_max, int points) {
  const Axis axis{0.0, t_max, points, false};
  std::vector<PdfCurve> out;
  for (double k : weibull_shapes) {
    PdfCurve c{WtdSpec{WtdKind::Weibull, k, 1.0}, axis.values(), {}};
    for (double t : c.t) c.density.push_back(pdf(c.wtd, t));
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t argmax(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("argmax of an empty range");
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

int count_above(const std::vector<double>& values, double threshold) {
  return static_cast<int>(std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; }));
}

}  // namespace colltherm

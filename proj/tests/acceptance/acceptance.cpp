// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria (0 when all pass).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "colltherm/commands.hpp"
#include "colltherm/correlations.hpp"
#include "colltherm/figures.hpp"
#include "colltherm/fisher.hpp"

using namespace colltherm;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s  criterion %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

EnvironmentParams env_for_rate(double nbar, double rate) { return {nbar, rate / (2.0 * nbar + 1.0)}; }

double simulated_qfi(const EnvironmentParams& env, const CollisionSpec& spec, int n) {
  const std::vector<double> taus(static_cast<std::size_t>(n - 1), 1.0);
  return chain_qfi(env, spec, n, taus);
}

std::vector<double> row_of(const std::vector<double>& grid, std::size_t row, std::size_t width) {
  return {grid.begin() + static_cast<std::ptrdiff_t>(row * width),
          grid.begin() + static_cast<std::ptrdiff_t>((row + 1) * width)};
}

int width_at_half_peak(const std::vector<double>& v) {
  const double peak = *std::max_element(v.begin(), v.end());
  return static_cast<int>(std::count_if(v.begin(), v.end(), [&](double x) { return x >= 0.5 * peak; }));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(COLLTHERM_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

const std::array<double, 6> kRateGrid{0.01, 0.1, 0.5, 1.0, 3.0, 10.0};

}  // namespace

int main() {
  const Axis gt_axis = default_gamma_tau_axis();
  const Axis nb_axis = default_nbar_axis();
  const std::size_t width = static_cast<std::size_t>(gt_axis.points);
  const std::size_t height = static_cast<std::size_t>(nb_axis.points);

  report(1, "single-ancilla law", [] {
    double worst = 0.0;
    for (double g : {0.0, std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2}) {
      for (double n : {0.5, 1.0, 2.0}) {
        const CollisionSpec spec{InteractionKind::ZZ, g, ancilla_plus_x()};
        const double ratio = simulated_qfi({n, 1.0}, spec, 1) / thermal_fi_nbar(n);
        const double expected = 0.5 * (1.0 - std::cos(2.0 * g));
        worst = std::max(worst, std::abs(ratio - expected) / std::max(expected, 1.0));
      }
    }
    return Outcome{worst < 1e-6, fmt("max relative error %.2e over 12 points (tol 1e-6)", worst)};
  });

  report(2, "closed-form increment vs simulated F2 - Fth", [] {
    double worst = 0.0;
    for (double n : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      for (double rate : kRateGrid) {
        const EnvironmentParams env = env_for_rate(n, rate);
        const double sim = simulated_qfi(env, standard_zz(), 2) - thermal_fi_nbar(n);
        worst = std::max(worst, std::abs(sim / delta_analytic(n, rate) - 1.0));
      }
    }
    return Outcome{worst < 1e-5, fmt("max relative error %.2e over the 5x6 grid (tol 1e-5)", worst)};
  });

  report(3, "linear growth in N", [] {
    const EnvironmentParams env = env_for_rate(1.0, 2.0);
    const double fth = thermal_fi_nbar(1.0);
    std::vector<double> f;
    for (int n = 2; n <= 5; ++n) f.push_back(simulated_qfi(env, standard_zz(), n));
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < 4; ++i) {
      num += (i + 1) * (f[i] - fth);
      den += (i + 1) * (i + 1);
    }
    const double slope = num / den;
    double resid = 0.0;
    for (int i = 0; i < 4; ++i) resid = std::max(resid, std::abs(f[i] - fth - (i + 1) * slope));
    const double slope_err = std::abs(slope / delta_analytic(1.0, 2.0) - 1.0);
    return Outcome{resid < 1e-5, fmt("max residual %.2e (tol 1e-5); fitted increment vs closed form %.2e", resid,
                                     slope_err)};
  });

  report(4, "relaxation limits", [] {
    // Strong relaxation is checked at several nbar; the weak-relaxation bound
    // at the nbar = 1 reference point (the excess grows like (nbar + 1)^2 Gamma).
    double worst_high = 0.0;
    for (double n : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= 4; ++k) {
        const double r = simulated_qfi(env_for_rate(n, 50.0), standard_zz(), k) / (k * thermal_fi_nbar(n));
        worst_high = std::max(worst_high, std::abs(r - 1.0));
      }
    }
    auto low = [](double n) {
      return (simulated_qfi(env_for_rate(n, 1e-3), standard_zz(), 2) - thermal_fi_nbar(n)) / thermal_fi_nbar(n);
    };
    const double at_1 = low(1.0);
    return Outcome{worst_high <= 1e-6 && at_1 < 1e-2,
                   fmt("rate 50: max |F_N/(N Fth) - 1| = %.2e (tol 1e-6); rate 1e-3, nbar 1: (F2-Fth)/Fth = %.2e "
                       "(tol 1e-2) [nbar 0.5: %.2e, nbar 2: %.2e]",
                       worst_high, at_1, low(0.5), low(2.0))};
  });

  report(5, "product y measurement attains the QFI", [] {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (double nbar : {0.5, 2.0}) {
        for (double rate : kRateGrid) {
          const EnvironmentParams env = env_for_rate(nbar, rate);
          const std::vector<double> taus(static_cast<std::size_t>(n - 1), 1.0);
          const StateFamily fam = chain_family_nbar(env, standard_zz(), n, taus);
          const double q = qfi_of_state(fam, nbar);
          const double c = classical_fi(fam, nbar, optimal_measurement_basis(n));
          worst = std::max(worst, std::abs(c / q - 1.0));
        }
      }
    }
    return Outcome{worst < 1e-6, fmt("max relative gap %.2e over N=1..3 and the rate grid (tol 1e-6)", worst)};
  });

  std::vector<Fig1bCell> fig1b;
  report(6, "adjacent-ancilla discord vanishes", [&] {
    fig1b = sweep_fig1b(standard_zz(), gt_axis, nb_axis, 0);
    double worst = 0.0;
    for (const auto& c : fig1b) worst = std::max({worst, c.discord_a, c.discord_b});
    return Outcome{worst < 1e-6, fmt("max discord %.2e over %zu cells, both sides (tol 1e-6)", worst, fig1b.size())};
  });

  report(7, "mutual-information structure", [&] {
    double at_50 = 0.0;
    for (double n : nb_axis.values()) {
      const ChainResult r = run_chain(env_for_rate(n, 50.0), standard_zz(), 2, std::vector<double>{1.0});
      at_50 = std::max(at_50, mutual_information(pair_state(r.joint_ancillas, 0, 1)));
    }
    if (fig1b.empty()) fig1b = sweep_fig1b(standard_zz(), gt_axis, nb_axis, 0, false);
    double lo = INFINITY;
    double hi = -INFINITY;
    double adv_lo = INFINITY;
    double adv_hi = -INFINITY;
    int advantage = 0;
    for (const auto& c : fig1b) {
      lo = std::min(lo, c.mutual_information);
      hi = std::max(hi, c.mutual_information);
      if (c.ratio > 1.0) {
        ++advantage;
        adv_lo = std::min(adv_lo, c.mutual_information);
        adv_hi = std::max(adv_hi, c.mutual_information);
      }
    }
    const bool ok = at_50 < 1e-6 && advantage > 0 && adv_lo > lo && adv_hi < hi;
    return Outcome{ok, fmt("MI at rate 50 <= %.2e (tol 1e-6); advantage cells %d with MI in [%.3e, %.3e], grid MI in "
                           "[%.3e, %.3e]",
                           at_50, advantage, adv_lo, adv_hi, lo, hi)};
  });

  report(8, "parameter-interdependence ratio R", [&] {
    const auto cells = sweep_fig1c(standard_zz(), 2, gt_axis, nb_axis, 0);
    double min_r = INFINITY;
    std::vector<double> r(cells.size());
    std::vector<double> q(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      r[i] = cells[i].ratio_r;
      q[i] = cells[i].ratio;
      min_r = std::min(min_r, r[i]);
    }
    int misaligned = 0;
    int worst_offset = 0;
    for (std::size_t row = 0; row < height; ++row) {
      const int off = std::abs(static_cast<int>(argmax(row_of(r, row, width))) -
                               static_cast<int>(argmax(row_of(q, row, width))));
      worst_offset = std::max(worst_offset, off);
      if (off > 1) ++misaligned;
    }
    const bool ok = min_r >= 1.0 - 1e-12 && misaligned == 0;
    return Outcome{ok, fmt("min R = %.6f (need >= 1); rows with argmax offset > 1 cell: %d of %zu (worst %d cells)",
                           min_r, misaligned, height, worst_offset)};
  });

  report(9, "stochastic advantage for exponential waiting times", [&] {
    const auto cells = sweep_fig2(standard_zz(), {WtdKind::Weibull, 1.0, 1.0}, gt_axis, nb_axis, 0);
    std::vector<double> ratio(cells.size());
    std::vector<double> det(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      ratio[i] = cells[i].averaged / cells[i].deterministic;
      det[i] = cells[i].deterministic;
    }
    const double max_ratio = *std::max_element(ratio.begin(), ratio.end());
    int rows_below = 0;
    for (std::size_t row = 0; row < height; ++row) {
      const std::size_t peak = argmax(row_of(det, row, width));
      bool below = true;
      for (std::size_t j = (peak == 0 ? 0 : peak - 1); j <= std::min(width - 1, peak + 1); ++j) {
        below = below && ratio[row * width + j] < 1.0;
      }
      if (below) ++rows_below;
    }
    const bool ok = max_ratio >= 5.0 && rows_below == static_cast<int>(height);
    return Outcome{ok, fmt("max averaged/deterministic = %.3f (need >= 5); rows with ratio < 1 around the "
                           "deterministic peak: %d of %zu",
                           max_ratio, rows_below, height)};
  });

  report(10, "Weibull family at nbar = 2", [] {
    const Fig3Data d = sweep_fig3(standard_zz(), 2.0, {1.0, 2.0, 5.0, 50.0}, fig3_gamma_tau_axis(), 0);
    const auto& det = d.curves[0].ratio;
    double k50_dev = 0.0;
    for (std::size_t i = 0; i < det.size(); ++i) {
      k50_dev = std::max(k50_dev, std::abs(d.curves[4].ratio[i] / det[i] - 1.0));
    }
    // Every finite-k average exceeds Fth over the whole large-gamma_tau tail
    // (the excess decays like a power of the mean), so the strict count only
    // measures the grid end. Widths use the 1% advantage threshold.
    std::array<int, 3> widths{};
    std::array<int, 3> strict{};
    std::array<double, 3> peaks{};
    for (int c = 0; c < 3; ++c) {
      widths[c] = count_above(d.curves[c + 1].ratio, 1.01);
      strict[c] = count_above(d.curves[c + 1].ratio, 1.0);
      peaks[c] = *std::max_element(d.curves[c + 1].ratio.begin(), d.curves[c + 1].ratio.end());
    }
    const bool ok = k50_dev < 0.02 && widths[0] > widths[1] && widths[1] > widths[2] && peaks[0] < peaks[1] &&
                    peaks[1] < peaks[2];
    return Outcome{ok, fmt("k=50 max deviation %.3e (tol 2e-2); cells above 1.01 Fth k=1,2,5: %d, %d, %d "
                           "[strictly above Fth: %d, %d, %d]; peaks: %.3f, %.3f, %.3f",
                           k50_dev, widths[0], widths[1], widths[2], strict[0], strict[1], strict[2], peaks[0],
                           peaks[1], peaks[2])};
  });

  report(11, "quadrature vs Monte Carlo", [] {
    const EnvironmentParams env{1.0, 0.5};
    std::string detail;
    bool ok = true;
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
      const WtdSpec w{WtdKind::Weibull, k, 1.0};
      const McEstimate mc = average_qfi_mc(w, env, standard_zz(), 2, 10000, 20240 + static_cast<int>(10 * k), 0);
      const double quad = average_delta(w, env.nbar, env.gamma);
      const double z = std::abs(mc.mean - thermal_fi_nbar(env.nbar) - quad) / mc.std_error;
      ok = ok && z < 3.0;
      detail += fmt("k=%g: %.2f se; ", k, z);
    }
    return Outcome{ok, detail + "(tol 3 se, 1e4 samples)"};
  });

  report(12, "partial-swap interaction", [] {
    // Single ground-state ancilla colliding with S in its stroboscopic steady state.
    double best = 0.0;
    double best_gt = 0.0;
    double best_n = 0.0;
    for (double n : {0.5, 1.0, 2.0}) {
      for (double gt : default_gamma_tau_axis().values()) {
        const StateFamily fam = [&](double nb) {
          const EnvironmentParams e{nb, gt};
          ChainOptions o;
          o.initial_system = steady_state(stroboscopic_map(e, standard_swap(), 1.0));
          o.initial_thermalization = 1.0;
          return run_chain(e, standard_swap(), 1, {}, o).joint_ancillas;
        };
        const double r = qfi_of_state(fam, n) / thermal_fi_nbar(n);
        if (r > best) {
          best = r;
          best_gt = gt;
          best_n = n;
        }
      }
    }
    std::string widths;
    bool broader = true;
    const auto axis = fig3_gamma_tau_axis().values();
    for (double n : {0.5, 1.0, 2.0}) {
      std::vector<double> det;
      std::vector<double> avg;
      for (double gt : axis) {
        det.push_back(average_increment({WtdKind::Deterministic, 1.0, 1.0}, n, gt, standard_swap()));
        avg.push_back(average_increment({WtdKind::Weibull, 1.0, 1.0}, n, gt, standard_swap()));
      }
      const int wd = width_at_half_peak(det);
      const int wa = width_at_half_peak(avg);
      broader = broader && wa > wd;
      widths += fmt("nbar=%g: %d -> %d cells; ", n, wd, wa);
    }
    return Outcome{best > 1.0 && broader,
                   fmt("single-ancilla max QFI/Fth = %.3f at (nbar %g, gamma tau %.3g); half-peak width det -> k=1: ",
                       best, best_n, best_gt) +
                       widths};
  });

  report(13, "infrastructure properties", [] {
    double kraus = 0.0;
    bool invariants = true;
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double n : {0.0, 0.1, 1.0, 3.0}) {
      for (double tau : {0.0, 0.1, 1.0, 10.0, 100.0}) kraus = std::max(kraus, thermal_channel({n, 1.0}, tau).completeness_error());
    }
    for (int trial = 0; trial < 40; ++trial) {
      const EnvironmentParams env{0.05 + 3.0 * u(gen), 0.05 + 2.0 * u(gen)};
      const int n = 1 + trial % 4;
      std::vector<double> taus;
      for (int i = 0; i + 1 < n; ++i) taus.push_back(3.0 * u(gen));
      const CollisionSpec spec{trial % 2 ? InteractionKind::Swap : InteractionKind::ZZ, 3.0 * u(gen), ancilla_plus_x()};
      const ChainResult r = run_chain(env, spec, n, taus);
      invariants = invariants && r.joint_ancillas.check().ok() && r.final_system.check().ok() && r.full_state.check().ok();
    }
    double lindblad = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ComplexMatrix g(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Complex(u(gen) - 0.5, u(gen) - 0.5);
      ComplexMatrix m = g * g.adjoint();
      m /= m.trace();
      const DensityMatrix rho(m);
      const EnvironmentParams env{3.0 * u(gen), 0.05 + 2.0 * u(gen)};
      const double tau = 3.0 * u(gen);
      lindblad = std::max(lindblad, max_abs(apply_on_subsystems(rho, thermal_channel(env, tau), std::array{0}).matrix() -
                                            lindblad_oracle(env, tau, rho).matrix()));
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "colltherm_acceptance";
    fs::create_directories(dir);
    const fs::path cfg = dir / "grid.json";
    std::ofstream(cfg) << R"({"grids":{"gamma_tau":{"points":8},"nbar":{"points":5}},"mc_samples":200,"seed":77})";
    bool identical = true;
    for (const std::string cmd : {"fig1a", "fig1b", "fig2", "compute"}) {
      const fs::path a = dir / (cmd + ".1");
      const fs::path b = dir / (cmd + ".2");
      const bool ran = run_tool(cmd + " --config " + cfg.string() + " --threads 1 --out " + a.string()) == 0 &&
                       run_tool(cmd + " --config " + cfg.string() + " --threads 2 --out " + b.string()) == 0;
      identical = identical && ran && !slurp(a).empty() && slurp(a) == slurp(b);
    }
    const bool ok = kraus < 1e-10 && invariants && lindblad < 1e-8 && identical;
    return Outcome{ok, fmt("Kraus completeness %.1e (tol 1e-10); chain-state invariants %s; channel vs master "
                           "equation %.1e (tol 1e-8); CLI reruns %s",
                           kraus, invariants ? "hold" : "violated", lindblad, identical ? "byte-identical" : "differ")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}

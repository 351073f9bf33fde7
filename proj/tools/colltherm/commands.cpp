#include "colltherm/commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "colltherm/correlations.hpp"
#include "colltherm/fisher.hpp"

namespace colltherm::cli {

namespace {

using nlohmann::json;

void write_header(const RunConfig& config, const std::string& figure, std::ostream& out) {
  out << "# colltherm " << figure << "\n";
  out << "# config: " << to_json(config).dump() << "\n";
  out << "# gamma_tau is gamma * tau with tau = 1; \"-inf\" marks log10 of an exactly zero ratio\n";
}

void require_gibbs(const RunConfig& config) {
  if (config.initial_system != InitialSystem::Gibbs) {
    throw ConfigError("figure sweeps start from the Gibbs state; initial_system must be gibbs");
  }
}

template <class... T>
void row(std::ostream& out, const T&... values) {
  bool first = true;
  ((out << (first ? "" : ",") << values, first = false), ...);
  out << "\n";
}

std::string k_label(const WtdSpec& w) { return w.kind == WtdKind::Deterministic ? "inf" : format_double(w.shape); }

json maybe(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double log10_ratio(double ratio) {
  if (ratio <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log10(ratio);
}

void write_fig1a(const RunConfig& config, std::ostream& out) {
  config.validate();
  require_gibbs(config);
  const auto cells = sweep_fig1a(config.collision(), config.gamma_tau_axis, config.nbar_axis, config.threads);
  write_header(config, "fig1a", out);
  out << "# above_contour: 1 where the ratio exceeds 1.01\n";
  row(out, "gamma_tau", "nbar", "ratio", "log10_ratio", "above_contour");
  for (const auto& c : cells) {
    row(out, format_double(c.gamma_tau), format_double(c.nbar), format_double(c.ratio),
        format_double(log10_ratio(c.ratio)), c.ratio > 1.01 ? 1 : 0);
  }
}

void write_fig1b(const RunConfig& config, std::ostream& out) {
  config.validate();
  require_gibbs(config);
  const auto cells =
      sweep_fig1b(config.collision(), config.gamma_tau_axis, config.nbar_axis, config.threads, config.discord);
  write_header(config, "fig1b", out);
  row(out, "gamma_tau", "nbar", "mutual_information", "discord_a", "discord_b", "log10_ratio");
  for (const auto& c : cells) {
    row(out, format_double(c.gamma_tau), format_double(c.nbar), format_double(c.mutual_information),
        config.discord ? format_double(c.discord_a) : "nan", config.discord ? format_double(c.discord_b) : "nan",
        format_double(log10_ratio(c.ratio)));
  }
}

void write_fig1c(const RunConfig& config, std::ostream& out) {
  config.validate();
  require_gibbs(config);
  const auto cells =
      sweep_fig1c(config.collision(), config.n_ancillas, config.gamma_tau_axis, config.nbar_axis, config.threads);
  write_header(config, "fig1c", out);
  row(out, "gamma_tau", "nbar", "ratio_r", "log10_ratio");
  for (const auto& c : cells) {
    row(out, format_double(c.gamma_tau), format_double(c.nbar), format_double(c.ratio_r),
        format_double(log10_ratio(c.ratio)));
  }
}

void write_fig2(const RunConfig& config, std::ostream& out) {
  config.validate();
  require_gibbs(config);
  const auto cells =
      sweep_fig2(config.collision(), config.wtd, config.gamma_tau_axis, config.nbar_axis, config.threads);
  write_header(config, "fig2", out);
  out << "# gamma_tau is gamma times the mean waiting time; above_crossing: 1 where averaged > deterministic\n";
  row(out, "gamma_tau", "nbar", "averaged", "deterministic", "log10_ratio", "above_crossing");
  for (const auto& c : cells) {
    const double ratio = c.deterministic > 0.0 ? c.averaged / c.deterministic : std::numeric_limits<double>::quiet_NaN();
    row(out, format_double(c.gamma_tau), format_double(c.nbar), format_double(c.averaged),
        format_double(c.deterministic), format_double(log10_ratio(ratio)), ratio > 1.0 ? 1 : 0);
  }
}

void write_fig3(const RunConfig& config, std::ostream& out) {
  config.validate();
  require_gibbs(config);
  const Fig3Data data =
      sweep_fig3(config.collision(), config.fig3_nbar, config.fig3_shapes, config.fig3_gamma_tau_axis, config.threads);
  const auto inset = fig3_inset(config.fig3_shapes, config.inset_t_max, config.inset_points);
  write_header(config, "fig3", out);
  out << "# series qfi: x = gamma times mean waiting time, y = averaged increment / thermal QFI\n";
  out << "# series pdf: x = waiting time at unit mean, y = density\n";
  row(out, "series", "k", "x", "y");
  for (const auto& c : data.curves) {
    for (std::size_t i = 0; i < data.gamma_tau.size(); ++i) {
      row(out, "qfi", k_label(c.wtd), format_double(data.gamma_tau[i]), format_double(c.ratio[i]));
    }
  }
  for (const auto& c : inset) {
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      row(out, "pdf", k_label(c.wtd), format_double(c.t[i]), format_double(c.density[i]));
    }
  }
}

json compute_record(const RunConfig& config) {
  config.validate();
  const CollisionSpec spec = config.collision();
  const double nbar = config.resolved_nbar();
  const EnvironmentParams env{nbar, config.gamma_tau};
  const double tau = config.wtd.mean_tau;
  const int n = config.n_ancillas;
  const std::vector<double> taus(static_cast<std::size_t>(n - 1), tau);
  const bool steady = config.initial_system == InitialSystem::Steady;

  auto options_for = [&](const EnvironmentParams& e) {
    ChainOptions o;
    if (steady) {
      // The map's fixed point is S just after a collision; relax it once more.
      o.initial_system = steady_state(stroboscopic_map(e, spec, tau));
      o.initial_thermalization = tau;
    }
    return o;
  };
  const StateFamily family = [&](double nb) {
    EnvironmentParams e = env;
    e.nbar = nb;
    return run_chain(e, spec, n, taus, options_for(e)).joint_ancillas;
  };

  json r;
  r["config"] = to_json(config);
  r["nbar"] = nbar;
  r["gamma"] = config.gamma_tau;
  r["tau"] = tau;
  r["rate"] = env.effective_rate(tau);
  const double fth = thermal_fi_nbar(nbar);
  const double qfi_value = qfi_of_state(family, nbar);
  r["thermal_fi"] = fth;
  r["qfi"] = qfi_value;
  r["qfi_over_thermal"] = qfi_value / fth;
  if (config.omega && config.temperature) {
    const double dn = mean_occupation_dT(*config.omega, *config.temperature);
    r["thermal_fi_T"] = thermal_fi_T(*config.omega, *config.temperature);
    r["qfi_T"] = qfi_value * dn * dn;
  }
  const double inc = per_ancilla_increment(env, spec, tau);
  r["delta"] = inc;
  r["delta_over_thermal"] = inc / fth;
  r["delta_average"] = average_increment(config.wtd, nbar, config.gamma_tau, spec);

  const ChainResult chain = run_chain(env, spec, n, taus, options_for(env));
  if (n >= 2) {
    const BipartiteState pair = pair_state(chain.joint_ancillas, 0, 1);
    r["ancilla_pair"] = {{"mutual_information", mutual_information(pair)},
                         {"discord_a", config.discord ? maybe(discord(pair, MeasuredSide::A)) : json()},
                         {"discord_b", config.discord ? maybe(discord(pair, MeasuredSide::B)) : json()}};
  } else {
    r["ancilla_pair"] = nullptr;
  }
  const BipartiteState sys = pair_state(chain.full_state, 0, n);
  r["system_last_ancilla"] = {{"mutual_information", mutual_information(sys)},
                              {"discord_system_measured", config.discord ? maybe(discord(sys, MeasuredSide::A)) : json()},
                              {"discord_ancilla_measured", config.discord ? maybe(discord(sys, MeasuredSide::B)) : json()}};

  try {
    Eigen::MatrixXd f;
    if (steady) {
      const StateFamily2 fam2 = [&](double nb, double g) {
        const EnvironmentParams e{nb, g};
        return run_chain(e, spec, n, taus, options_for(e)).joint_ancillas;
      };
      f = qfi_matrix(fam2, ParamPoint{nbar, config.gamma_tau, EstimatedParams::NbarAndGamma});
    } else {
      f = chain_qfi_matrix(env, spec, n, taus);
    }
    r["qfi_matrix"] = {{f(0, 0), f(0, 1)}, {f(1, 0), f(1, 1)}};
    r["ratio_r"] = ratio_R(f);
  } catch (const NumericalError&) {
    r["ratio_r"] = nullptr;
  }

  if (config.mc_samples > 0) {
    const McEstimate mc = average_qfi_mc(config.wtd, env, spec, n, config.mc_samples, config.seed, config.threads);
    r["monte_carlo"] = {{"mean_qfi", mc.mean},
                        {"std_error", mc.std_error},
                        {"samples", mc.samples},
                        {"seed", config.seed},
                        {"quadrature_qfi", fth + (n - 1) * r["delta_average"].get<double>()}};
  }
  return r;
}

int run_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, double value) {
    out << (ok ? "ok   " : "FAIL ") << name << " (" << format_double(value) << ")\n";
    if (!ok) ++failures;
  };
  auto guarded = [&](const std::string& name, const std::function<std::pair<bool, double>()>& body) {
    try {
      const auto [ok, v] = body();
      check(name, ok, v);
    } catch (const std::exception& e) {
      out << "FAIL " << name << " (" << e.what() << ")\n";
      ++failures;
    }
  };

  guarded("thermal channel completeness", [] {
    const double err = thermal_channel({1.3, 0.7}, 0.9).completeness_error();
    return std::pair{err < 1e-10, err};
  });
  guarded("thermal channel matches master equation", [] {
    ComplexMatrix m(2, 2);
    m << 0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7;
    const DensityMatrix rho(m);
    const EnvironmentParams env{0.8, 1.1};
    const double err = max_abs(apply_on_subsystems(rho, thermal_channel(env, 0.6), std::array<int, 1>{0}).matrix() -
                               lindblad_oracle(env, 0.6, rho).matrix());
    return std::pair{err < 1e-8, err};
  });
  guarded("single-ancilla law at g tau = pi/4", [] {
    const CollisionSpec spec{InteractionKind::ZZ, 0.25 * std::numbers::pi, ancilla_plus_x()};
    const double ratio = chain_qfi({1.0, 1.0}, spec, 1, {}) / thermal_fi_nbar(1.0);
    return std::pair{std::abs(ratio - 0.5) < 1e-6, ratio};
  });
  guarded("closed-form increment matches the chain", [] {
    const EnvironmentParams env{1.0, 2.0 / 3.0};
    const std::array<double, 1> taus{1.0};
    const double sim = chain_qfi(env, standard_zz(), 2, taus) - thermal_fi_nbar(1.0);
    const double rel = std::abs(sim / delta_analytic(1.0, 2.0) - 1.0);
    return std::pair{rel < 1e-5, rel};
  });
  guarded("narrow Weibull approaches the deterministic increment", [] {
    const double avg = average_delta({WtdKind::Weibull, 50.0, 1.0}, 2.0, 0.2);
    const double rel = std::abs(avg / delta_analytic(2.0, 1.0) - 1.0);
    return std::pair{rel < 0.02, rel};
  });
  return failures;
}

std::string plot_script(const std::string& figure, const std::string& csv_path) {
  std::string s = "# gnuplot script for " + figure + "\nset datafile separator ','\nset datafile commentschars '#'\n";
  const std::string data = "'" + csv_path + "'";
  if (figure == "fig3") {
    s += "set logscale x\nset xlabel 'gamma * mean tau'\nset ylabel 'averaged increment / thermal QFI'\n"
         "plot for [k in 'inf 1 2 5 50'] " + data +
         " using (strcol(1) eq 'qfi' && strcol(2) eq k ? $3 : 1/0):4 skip 1 with lines title 'k='.k\n";
    return s;
  }
  std::string column = "4";
  std::string label = "log10 ratio";
  if (figure == "fig1b") {
    column = "3";
    label = "mutual information";
  } else if (figure == "fig1c") {
    column = "3";
    label = "R";
  } else if (figure == "fig2") {
    column = "5";
    label = "log10 averaged / deterministic";
  }
  s += "set logscale x\nset view map\nset xlabel 'gamma tau'\nset ylabel 'nbar'\nset title '" + label + "'\n"
       "splot " + data + " using 1:2:" + column + " skip 1 with points palette pointtype 5 notitle\n";
  return s;
}

}  // namespace colltherm::cli

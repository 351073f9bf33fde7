#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "colltherm/commands.hpp"

namespace {

using colltherm::cli::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> nbar;
  std::optional<double> gamma_tau;
  std::optional<double> k;
  std::optional<int> n_ancillas;
  std::optional<std::string> interaction;
  std::optional<double> g_tau;
  std::optional<double> omega;
  std::optional<double> temperature;
  std::optional<int> mc_samples;
  std::optional<std::string> plot_script;
};

void add_flags(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--threads", o.threads, "worker threads, 0 for all cores (fallback: THERMO_THREADS)");
  app.add_option("--nbar", o.nbar, "mean thermal occupation");
  app.add_option("--gamma-tau", o.gamma_tau, "coupling rate times waiting time");
  app.add_option("--k", o.k, "shape of the waiting-time distribution");
  app.add_option("--n-ancillas", o.n_ancillas, "number of ancillas in the chain");
  app.add_option("--interaction", o.interaction, "zz or swap")->check(CLI::IsMember({"zz", "swap"}));
  app.add_option("--g-tau", o.g_tau, "collision strength g * tau_SA");
  app.add_option("--omega", o.omega, "qubit frequency (with --temperature, replaces --nbar)");
  app.add_option("--temperature", o.temperature, "environment temperature");
  app.add_option("--mc-samples", o.mc_samples, "compute: Monte Carlo samples (0 to skip)");
  app.add_option("--plot-script", o.plot_script, "also write a gnuplot script to this path");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : colltherm::cli::load_config_file(o.config_path);
  if (!o.threads) {
    if (const char* env = std::getenv("THERMO_THREADS")) {
      try {
        c.threads = std::stoi(env);
      } catch (const std::exception&) {
        throw colltherm::cli::ConfigError("THERMO_THREADS must be an integer");
      }
    }
  }
  nlohmann::json j;
  if (o.nbar) j["env"]["nbar"] = *o.nbar;
  if (o.gamma_tau) j["env"]["gamma_tau"] = *o.gamma_tau;
  if (o.omega) j["env"]["omega"] = *o.omega;
  if (o.temperature) j["env"]["temperature"] = *o.temperature;
  if (o.interaction) j["interaction"]["kind"] = *o.interaction;
  if (o.g_tau) j["interaction"]["g_tau"] = *o.g_tau;
  if (o.k) j["wtd"]["shape"] = *o.k;
  if (o.n_ancillas) j["n_ancillas"] = *o.n_ancillas;
  if (o.seed) j["seed"] = *o.seed;
  if (o.mc_samples) j["mc_samples"] = *o.mc_samples;
  if (o.threads) j["threads"] = *o.threads;
  if (o.out) j["out"] = *o.out;
  if (!j.is_null()) colltherm::cli::apply_json(c, j);
  if (o.plot_script) c.plot_script = *o.plot_script;
  return c;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw colltherm::cli::ConfigError("cannot write '" + c.out + "'");
  f << text;
}

void emit_plot_script(const RunConfig& c, const std::string& figure) {
  if (c.plot_script.empty()) return;
  std::ofstream f(c.plot_script, std::ios::binary);
  if (!f) throw colltherm::cli::ConfigError("cannot write '" + c.plot_script + "'");
  f << colltherm::cli::plot_script(figure, c.out.empty() ? figure + ".csv" : c.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collisional thermometry: figure sweeps and single-point diagnostics"};
  app.require_subcommand(1);
  Overrides o;

  using Writer = void (*)(const RunConfig&, std::ostream&);
  const std::vector<std::pair<std::string, Writer>> figures{
      {"fig1a", colltherm::cli::write_fig1a}, {"fig1b", colltherm::cli::write_fig1b},
      {"fig1c", colltherm::cli::write_fig1c}, {"fig2", colltherm::cli::write_fig2},
      {"fig3", colltherm::cli::write_fig3}};
  for (const auto& [name, _] : figures) add_flags(*app.add_subcommand(name, name + " sweep as CSV"), o);
  add_flags(*app.add_subcommand("compute", "single-point diagnostics as JSON"), o);
  app.add_subcommand("selftest", "quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("selftest")) return colltherm::cli::run_selftest(std::cout) == 0 ? 0 : 3;

    const RunConfig config = resolve(o);
    for (const auto& [name, writer] : figures) {
      if (!app.got_subcommand(name)) continue;
      std::ostringstream buffer;
      writer(config, buffer);
      emit(config, buffer.str());
      emit_plot_script(config, name);
      return 0;
    }
    emit(config, colltherm::cli::compute_record(config).dump(2) + "\n");
    return 0;
  } catch (const colltherm::ResourceGuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 4;
  } catch (const colltherm::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const colltherm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

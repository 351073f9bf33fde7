#include "colltherm/config.hpp"

#include <fstream>
#include <set>

namespace colltherm::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("wrong type for '" + std::string(key) + "' in " + where);
  }
}

void read_axis(const json& j, const char* key, Axis& axis) {
  if (!j.contains(key)) return;
  const json& a = j.at(key);
  const std::string where = std::string("grids.") + key;
  check_keys(a, where, {"min", "max", "points", "log"});
  read(a, "min", axis.min, where);
  read(a, "max", axis.max, where);
  read(a, "points", axis.points, where);
  read(a, "log", axis.log, where);
}

json axis_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"points", a.points}, {"log", a.log}}; }

InteractionKind parse_interaction(const std::string& s) {
  if (s == "zz") return InteractionKind::ZZ;
  if (s == "swap") return InteractionKind::Swap;
  throw ConfigError("interaction must be 'zz' or 'swap', got '" + s + "'");
}

WtdKind parse_wtd_kind(const std::string& s) {
  if (s == "deterministic") return WtdKind::Deterministic;
  if (s == "exponential") return WtdKind::Exponential;
  if (s == "weibull") return WtdKind::Weibull;
  if (s == "erlang") return WtdKind::Erlang;
  throw ConfigError("unknown wtd kind '" + s + "'");
}

std::string wtd_kind_name(WtdKind k) {
  switch (k) {
    case WtdKind::Deterministic:
      return "deterministic";
    case WtdKind::Exponential:
      return "exponential";
    case WtdKind::Weibull:
      return "weibull";
    case WtdKind::Erlang:
      return "erlang";
  }
  return "";
}

std::string default_ancilla(InteractionKind k) { return k == InteractionKind::ZZ ? "plus_x" : "ground"; }

}  // namespace

void RunConfig::validate() const {
  try {
    EnvironmentParams{resolved_nbar(), gamma_tau}.validate();
    wtd.validate();
    gamma_tau_axis.validate();
    nbar_axis.validate();
    fig3_gamma_tau_axis.validate();
    EnvironmentParams{fig3_nbar, 1.0}.validate();
    for (double k : fig3_shapes) WtdSpec{WtdKind::Weibull, k, 1.0}.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (!(nbar > 0.0) && !(omega && temperature)) throw ConfigError("nbar must be positive");
  if (!(nbar_axis.min > 0.0)) throw ConfigError("nbar grid must be positive");
  if (!std::isfinite(g_tau)) throw ConfigError("g_tau must be finite");
  if (n_ancillas < 1) throw ConfigError("n_ancillas must be at least 1");
  if (n_ancillas > max_ancillas()) throw ResourceGuardError("n_ancillas exceeds the dimension guard");
  if (mc_samples < 0) throw ConfigError("mc_samples must be nonnegative");
  if (mc_samples > 0 && n_ancillas < 2) throw ConfigError("Monte Carlo averaging needs n_ancillas >= 2");
  if (mc_samples > 0 && initial_system == InitialSystem::Steady) {
    throw ConfigError("Monte Carlo averaging requires initial_system = gibbs");
  }
  if (omega.has_value() != temperature.has_value()) throw ConfigError("omega and temperature must be given together");
  if (omega && !(*omega > 0.0 && *temperature > 0.0)) throw ConfigError("omega and temperature must be positive");
  if (inset_points < 2 || !(inset_t_max > 0.0)) throw ConfigError("inset grid needs t_max > 0 and >= 2 points");
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  const std::string a = ancilla.empty() ? default_ancilla(interaction) : ancilla;
  if (a != "plus_x" && a != "ground" && a != "mixed") throw ConfigError("ancilla must be plus_x, ground or mixed");
}

CollisionSpec RunConfig::collision() const {
  const std::string a = ancilla.empty() ? default_ancilla(interaction) : ancilla;
  DensityMatrix prep = a == "plus_x" ? ancilla_plus_x() : a == "ground" ? ancilla_ground() : DensityMatrix(0.5 * identity(2));
  return CollisionSpec{interaction, g_tau, std::move(prep)};
}

double RunConfig::resolved_nbar() const {
  if (omega && temperature) return mean_occupation(*omega, *temperature);
  return nbar;
}

void apply_json(RunConfig& c, const json& j) {
  check_keys(j, "config", {"interaction", "env", "wtd", "n_ancillas", "grids", "fig3", "seed", "mc_samples",
                           "discord", "threads", "out"});
  if (j.contains("interaction")) {
    const json& i = j.at("interaction");
    check_keys(i, "interaction", {"kind", "g_tau", "ancilla"});
    std::string kind;
    read(i, "kind", kind, "interaction");
    if (!kind.empty()) c.interaction = parse_interaction(kind);
    read(i, "g_tau", c.g_tau, "interaction");
    read(i, "ancilla", c.ancilla, "interaction");
  }
  if (j.contains("env")) {
    const json& e = j.at("env");
    check_keys(e, "env", {"nbar", "gamma_tau", "omega", "temperature", "initial_system"});
    read(e, "nbar", c.nbar, "env");
    read(e, "gamma_tau", c.gamma_tau, "env");
    if (e.contains("omega")) {
      double v = 0.0;
      read(e, "omega", v, "env");
      c.omega = v;
    }
    if (e.contains("temperature")) {
      double v = 0.0;
      read(e, "temperature", v, "env");
      c.temperature = v;
    }
    std::string init;
    read(e, "initial_system", init, "env");
    if (init == "steady") c.initial_system = InitialSystem::Steady;
    else if (init == "gibbs") c.initial_system = InitialSystem::Gibbs;
    else if (!init.empty()) throw ConfigError("initial_system must be 'gibbs' or 'steady'");
  }
  if (j.contains("wtd")) {
    const json& w = j.at("wtd");
    check_keys(w, "wtd", {"kind", "shape", "mean_tau"});
    std::string kind;
    read(w, "kind", kind, "wtd");
    if (!kind.empty()) c.wtd.kind = parse_wtd_kind(kind);
    read(w, "shape", c.wtd.shape, "wtd");
    read(w, "mean_tau", c.wtd.mean_tau, "wtd");
  }
  read(j, "n_ancillas", c.n_ancillas, "config");
  if (j.contains("grids")) {
    const json& g = j.at("grids");
    check_keys(g, "grids", {"gamma_tau", "nbar", "fig3_gamma_tau"});
    read_axis(g, "gamma_tau", c.gamma_tau_axis);
    read_axis(g, "nbar", c.nbar_axis);
    read_axis(g, "fig3_gamma_tau", c.fig3_gamma_tau_axis);
  }
  if (j.contains("fig3")) {
    const json& f = j.at("fig3");
    check_keys(f, "fig3", {"nbar", "shapes", "inset_t_max", "inset_points"});
    read(f, "nbar", c.fig3_nbar, "fig3");
    read(f, "shapes", c.fig3_shapes, "fig3");
    read(f, "inset_t_max", c.inset_t_max, "fig3");
    read(f, "inset_points", c.inset_points, "fig3");
  }
  read(j, "seed", c.seed, "config");
  read(j, "mc_samples", c.mc_samples, "config");
  read(j, "discord", c.discord, "config");
  read(j, "threads", c.threads, "config");
  read(j, "out", c.out, "config");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig c;
  apply_json(c, j);
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["interaction"] = {{"kind", c.interaction == InteractionKind::ZZ ? "zz" : "swap"},
                      {"g_tau", c.g_tau},
                      {"ancilla", c.ancilla.empty() ? default_ancilla(c.interaction) : c.ancilla}};
  j["env"] = {{"nbar", c.nbar},
              {"gamma_tau", c.gamma_tau},
              {"initial_system", c.initial_system == InitialSystem::Gibbs ? "gibbs" : "steady"}};
  if (c.omega) j["env"]["omega"] = *c.omega;
  if (c.temperature) j["env"]["temperature"] = *c.temperature;
  j["wtd"] = {{"kind", wtd_kind_name(c.wtd.kind)}, {"shape", c.wtd.shape}, {"mean_tau", c.wtd.mean_tau}};
  j["n_ancillas"] = c.n_ancillas;
  j["grids"] = {{"gamma_tau", axis_json(c.gamma_tau_axis)},
                {"nbar", axis_json(c.nbar_axis)},
                {"fig3_gamma_tau", axis_json(c.fig3_gamma_tau_axis)}};
  j["fig3"] = {{"nbar", c.fig3_nbar},
               {"shapes", c.fig3_shapes},
               {"inset_t_max", c.inset_t_max},
               {"inset_points", c.inset_points}};
  j["seed"] = c.seed;
  j["mc_samples"] = c.mc_samples;
  j["discord"] = c.discord;
  return j;
}

}  // namespace colltherm::cli

#pragma once

// Run configuration shared by every subcommand: JSON file first, then
// command-line overrides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "colltherm/figures.hpp"

namespace colltherm::cli {

/// Malformed or out-of-range configuration (exit code 2).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class InitialSystem { Gibbs, Steady };

struct RunConfig {
  // interaction
  InteractionKind interaction = InteractionKind::ZZ;
  double g_tau = 1.5707963267948966;
  std::string ancilla;  ///< "plus_x", "ground" or "mixed"; empty picks the interaction default

  // environment; tau = 1 throughout, so gamma_tau is gamma
  double nbar = 1.0;
  double gamma_tau = 1.0;
  std::optional<double> omega;
  std::optional<double> temperature;
  InitialSystem initial_system = InitialSystem::Gibbs;

  WtdSpec wtd{WtdKind::Weibull, 1.0, 1.0};
  int n_ancillas = 2;

  Axis gamma_tau_axis = default_gamma_tau_axis();
  Axis nbar_axis = default_nbar_axis();
  Axis fig3_gamma_tau_axis = colltherm::fig3_gamma_tau_axis();
  double fig3_nbar = 2.0;
  std::vector<double> fig3_shapes{1.0, 2.0, 5.0, 50.0};
  double inset_t_max = 10.0;
  int inset_points = 10001;

  std::uint64_t seed = 0;
  int mc_samples = 0;  ///< compute: Monte Carlo samples, 0 to skip
  bool discord = true;

  // execution only; never echoed
  int threads = 1;
  std::string out;
  std::string plot_script;

  void validate() const;
  CollisionSpec collision() const;
  /// nbar from (omega, temperature) when both are set, nbar otherwise.
  double resolved_nbar() const;
};

/// Applies the fields present in `j` on top of `config`. Unknown keys and
/// wrong types raise ConfigError.
void apply_json(RunConfig& config, const nlohmann::json& j);

RunConfig load_config_file(const std::string& path);

/// Resolved configuration as JSON, excluding execution-only fields.
nlohmann::json to_json(const RunConfig& config);

}  // namespace colltherm::cli

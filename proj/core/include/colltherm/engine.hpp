#pragma once

// Executes the collision chain
//   U_{S A_N} o E o U_{S A_{N-1}} o ... o E o U_{S A_1}  (rho_S (x) rho_A1 (x) ... )
// one ancilla at a time: each ancilla is appended to the right of the joint
// state just before its collision, so the peak dimension is 2^(N+1). The
// system S is subsystem 0 and A_1 is the leftmost ancilla.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "colltherm/model.hpp"

namespace colltherm {

struct ChainOptions {
  /// Initial state of S; defaults to gibbs_state(env.nbar).
  std::optional<DensityMatrix> initial_system;
  /// Derivatives of a user-supplied initial_system, one per requested
  /// parameter in run_chain_tangent. Treated as zero when absent.
  std::vector<ComplexMatrix> initial_system_derivatives;
  /// If set, E(tau) acts on S before the first collision.
  std::optional<double> initial_thermalization;
};

struct ChainResult {
  DensityMatrix joint_ancillas;  ///< N qubits, S traced out
  DensityMatrix final_system;
  std::vector<double> taus;
  bool initial_thermalization = false;
  DensityMatrix full_state;  ///< S followed by the N ancillas, after the last collision
};

/// Joint ancilla state together with its exact derivatives.
struct ChainTangent {
  DensityMatrix joint_ancillas;
  std::vector<ComplexMatrix> derivatives;  ///< same order as the requested parameters
};

/// Largest chain length that stays within kMaxDimension (S plus N ancillas).
int max_ancillas();

/// Runs the chain for `n_ancillas` collisions separated by the waiting times
/// `taus` (size n_ancillas - 1).
ChainResult run_chain(const EnvironmentParams& env, const CollisionSpec& spec, int n_ancillas,
                      std::span<const double> taus, const ChainOptions& options = {});

/// Same chain, propagating d rho / d x alongside rho for each x in `wrt`
/// (forward-mode differentiation at fixed waiting times).
ChainTangent run_chain_tangent(const EnvironmentParams& env, const CollisionSpec& spec,
                               int n_ancillas, std::span<const double> taus,
                               std::span<const EnvParameter> wrt, const ChainOptions& options = {});

using StroboscopicMap = std::function<DensityMatrix(const DensityMatrix&)>;

/// rho -> tr_A { U (E_tau(rho) (x) rho_A) U^dag }.
StroboscopicMap stroboscopic_map(const EnvironmentParams& env, const CollisionSpec& spec, double tau);

struct SteadyStateOptions {
  double tolerance = 1e-12;  ///< max-entry change between successive iterates
  int max_iterations = 100000;
};

/// Fixed point of `map` by iteration from the maximally mixed qubit state.
/// Throws NumericalError if the iteration cap is reached.
DensityMatrix steady_state(const StroboscopicMap& map, const SteadyStateOptions& options = {});

}  // namespace colltherm

#pragma once

// Physical ingredients of the collision model. Units: hbar = k_B = 1.
// Basis ordering is {|g>, |e>} with sigma_z |e> = +|e> and sigma_minus |e> = |g>.

#include "colltherm/qmat.hpp"

namespace colltherm {

/// Thermal environment seen by the intermediary system.
struct EnvironmentParams {
  double nbar = 1.0;   ///< mean occupation at the qubit frequency, >= 0
  double gamma = 1.0;  ///< system-environment coupling rate, > 0

  void validate() const;

  /// Dimensionless relaxation accumulated over `tau`: gamma (2 nbar + 1) tau.
  double effective_rate(double tau) const { return gamma * (2.0 * nbar + 1.0) * tau; }
};

enum class InteractionKind { ZZ, Swap };

struct CollisionSpec {
  InteractionKind kind = InteractionKind::ZZ;
  double g_tau = 0.0;  ///< coupling times collision duration
  DensityMatrix ancilla_prep = DensityMatrix(ComplexMatrix::Identity(2, 2) * 0.5);
};

/// Which environment parameter a derivative is taken with respect to.
enum class EnvParameter { Nbar, Gamma };

/// Excited-state population nbar / (2 nbar + 1).
double excited_population(double nbar);

/// diag(p_g, p_e) with p_e = nbar / (2 nbar + 1).
DensityMatrix gibbs_state(double nbar);

/// Bose occupation 1 / (exp(omega / T) - 1).
double mean_occupation(double omega, double temperature);

/// d nbar / dT at fixed omega.
double mean_occupation_dT(double omega, double temperature);

/// Generalized amplitude damping: the exact solution of the thermalizing
/// master equation over a time `tau`. Populations relax towards the Gibbs
/// state as exp(-Gamma), coherences as exp(-Gamma / 2), with
/// Gamma = gamma (2 nbar + 1) tau. tau = 0 yields the single Kraus operator I.
KrausSet thermal_channel(const EnvironmentParams& env, double tau);

/// Row-major vectorized superoperator of thermal_channel (4 x 4).
ComplexMatrix thermal_superoperator(const EnvironmentParams& env, double tau);

/// Derivative of thermal_superoperator with respect to nbar or gamma at
/// fixed tau. Not a channel; used to propagate state derivatives exactly.
ComplexMatrix thermal_superoperator_derivative(const EnvironmentParams& env, double tau,
                                               EnvParameter wrt);

/// Vectorized Lindblad generator
/// gamma (nbar + 1) D[sigma_minus] + gamma nbar D[sigma_plus] (row-major vec).
ComplexMatrix lindblad_generator(const EnvironmentParams& env);

/// Reference propagation of the master equation by exponentiating the
/// vectorized generator with a scaled Taylor series. Independent of
/// thermal_channel; exists to certify it.
DensityMatrix lindblad_oracle(const EnvironmentParams& env, double tau, const DensityMatrix& rho);

/// System-ancilla Hamiltonian with g = 1: (1/2) sz sz for ZZ,
/// s+ s- + s- s+ for Swap. Subsystem order (S, A).
ComplexMatrix collision_hamiltonian(InteractionKind kind);

/// exp(-i H g tau) for the chosen interaction; 4 x 4, subsystem order (S, A).
ComplexMatrix collision_unitary(InteractionKind kind, double g_tau);
ComplexMatrix collision_unitary(const CollisionSpec& spec);

/// |+x><+x| with |+x> = (|g> + |e>) / sqrt 2.
DensityMatrix ancilla_plus_x();

/// |g><g|.
DensityMatrix ancilla_ground();

}  // namespace colltherm

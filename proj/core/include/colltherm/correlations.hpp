#pragma once

// Correlations between two qubits: mutual information and discord (nats).

#include <array>
#include <string>

#include "colltherm/qmat.hpp"

namespace colltherm {

/// A two-qubit state; subsystem 0 is A, subsystem 1 is B.
class BipartiteState {
 public:
  explicit BipartiteState(DensityMatrix rho, std::array<std::string, 2> labels = {"A", "B"});

  const DensityMatrix& rho() const { return rho_; }
  const std::array<std::string, 2>& labels() const { return labels_; }

 private:
  DensityMatrix rho_;
  std::array<std::string, 2> labels_;
};

/// Two-qubit marginal on subsystems (i, j) of a multi-qubit state.
BipartiteState pair_state(const DensityMatrix& rho, int i, int j);

/// S(A) + S(B) - S(AB).
double mutual_information(const BipartiteState& s);

enum class MeasuredSide { A, B };

struct DiscordOptions {
  int theta_points = 64;
  int phi_points = 128;
  double simplex_tolerance = 1e-10;  ///< simplex diameter in radians at convergence
  int max_iterations = 5000;
};

/// Conditional entropy sum_x p_x S(rho_{other|x}) after the projective
/// measurement along the Bloch direction (theta, phi) on the measured side.
double measured_conditional_entropy(const BipartiteState& s, MeasuredSide side, double theta, double phi);

/// Mutual information minus the classical correlations maximized over
/// rank-one projective measurements on `side`. The optimum is seeded on a
/// (theta, phi) grid and refined by Nelder-Mead; values within 1e-8 below
/// zero are clipped to zero. Throws NumericalError if the refinement does
/// not converge or the result is negative beyond that slack.
double discord(const BipartiteState& s, MeasuredSide side, const DiscordOptions& options = {});

}  // namespace colltherm

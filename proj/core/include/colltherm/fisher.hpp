#pragma once

// Estimation theory for the collisional thermometer. Every Fisher
// information here is with respect to the mean occupation nbar (or gamma);
// multiply by (d nbar / dT)^2 to convert to temperature.

#include <functional>
#include <span>
#include <vector>

#include "colltherm/engine.hpp"

namespace colltherm {

/// A one-parameter family of states theta -> rho(theta).
using StateFamily = std::function<DensityMatrix(double)>;

/// A two-parameter family (nbar, gamma) -> rho.
using StateFamily2 = std::function<DensityMatrix(double nbar, double gamma)>;

enum class EstimatedParams { NbarOnly, NbarAndGamma };

struct ParamPoint {
  double nbar = 1.0;
  double gamma = 1.0;
  EstimatedParams which = EstimatedParams::NbarAndGamma;

  void validate() const;
};

/// Positive operator-valued measure; elements are PSD and sum to identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements);

  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  Eigen::Index dim() const { return elements_.front().rows(); }

 private:
  std::vector<ComplexMatrix> elements_;
};

struct DerivativeOptions {
  double step = 0.0;        ///< 0 selects 1e-5 * max(1, |theta|)
  bool richardson = false;  ///< combine steps h and h/2 to cancel the O(h^2) term
};

// -- thermal benchmark ---------------------------------------------------------

/// QFI of the Gibbs qubit with respect to nbar: 1 / (nbar (nbar+1) (2 nbar+1)^2).
/// Throws InvalidArgument for nbar <= 0.
double thermal_fi_nbar(double nbar);

/// Same quantity with respect to temperature, for a qubit of frequency omega.
double thermal_fi_T(double omega, double temperature);

// -- derivatives and SLD ---------------------------------------------------------

double default_step(double theta);

/// Central difference (rho(theta+h) - rho(theta-h)) / 2h.
ComplexMatrix drho_dtheta(const StateFamily& family, double theta, const DerivativeOptions& options = {});

/// Symmetric logarithmic derivative: Hermitian L with d rho = (L rho + rho L) / 2
/// on the support of rho. Elements between eigenvectors whose eigenvalues sum
/// to less than 1e-12 are set to zero. Throws NumericalError if the residual
/// on the support exceeds 1e-8.
ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho);

/// max |P (d rho - (L rho + rho L)/2) P| with P the projector on supp(rho).
double sld_residual(const DensityMatrix& rho, const ComplexMatrix& drho, const ComplexMatrix& l);

/// tr(rho L^2) for the SLD of (rho, drho).
double qfi(const DensityMatrix& rho, const ComplexMatrix& drho);

double qfi_of_state(const StateFamily& family, double theta, const DerivativeOptions& options = {});

/// sum_x (d p_x)^2 / p_x with p_x = tr(Pi_x rho), outcomes with p_x <= 1e-14 skipped.
double classical_fi(const DensityMatrix& rho, const ComplexMatrix& drho, const Povm& povm);
double classical_fi(const StateFamily& family, double theta, const Povm& povm,
                    const DerivativeOptions& options = {});

/// Projective measurement onto the eigenbasis of `hermitian` (e.g. an SLD).
Povm eigenbasis_povm(const ComplexMatrix& hermitian);

/// Product measurement in the y basis y_pm = (|g> +- i|e>)/sqrt 2 on every
/// ancilla: 2^N rank-one projectors, y_+ first on each factor.
Povm optimal_measurement_basis(int n_ancillas);

// -- closed forms for the ZZ chain -------------------------------------------------

/// Per-ancilla QFI increment of the ZZ / |+x> chain at g tau = pi/2:
///   Delta = sum_z p_z (dP_z/dnbar)^2 / (P_z (1 - P_z)) with P_g = p_e^th (1 - e^-Gamma),
///   P_e = p_g^th (1 - e^-Gamma), Gamma = gamma (2 nbar + 1) tau.
/// Delta -> 0 as Gamma -> 0 and Delta -> thermal_fi_nbar as Gamma -> infinity.
double delta_analytic(double nbar, double rate);

/// QFI of the relaxed ground state E_tau(|g><g|), whose excited population is
/// p_e^th (1 - e^-Gamma). This is the per-ancilla increment of the full swap
/// (g tau = pi/2) with ground-state ancillas.
double swap_increment_analytic(double nbar, double rate);

/// thermal_fi_nbar + (N - 1) delta_analytic.
double qfi_deterministic_N(double nbar, double rate, int n_ancillas);

// -- multi-parameter -------------------------------------------------------------

/// F_ab = Re tr(rho L_a L_b) for the given state derivatives.
Eigen::MatrixXd qfi_matrix(const DensityMatrix& rho, std::span<const ComplexMatrix> derivatives);

/// QFI matrix of a two-parameter family by central differences. For
/// EstimatedParams::NbarOnly the result is 1 x 1.
Eigen::MatrixXd qfi_matrix(const StateFamily2& family, const ParamPoint& point,
                           const DerivativeOptions& options = {});

/// QFI matrix w.r.t. (nbar, gamma) of the joint ancilla state of a chain,
/// with exact derivatives from run_chain_tangent.
Eigen::MatrixXd chain_qfi_matrix(const EnvironmentParams& env, const CollisionSpec& spec,
                                 int n_ancillas, std::span<const double> taus,
                                 const ChainOptions& options = {});

/// tr(F^-1) / sum_a 1/F_aa (>= 1). Throws NumericalError if F is singular.
double ratio_R(const Eigen::MatrixXd& fmatrix);

// -- chain helpers -----------------------------------------------------------------

/// nbar -> joint ancilla state of the chain, gamma and taus held fixed.
StateFamily chain_family_nbar(const EnvironmentParams& env, const CollisionSpec& spec,
                              int n_ancillas, std::vector<double> taus, ChainOptions options = {});

/// QFI w.r.t. nbar of the joint ancilla state (central differences).
double chain_qfi(const EnvironmentParams& env, const CollisionSpec& spec, int n_ancillas,
                 std::span<const double> taus, const ChainOptions& options = {});

}  // namespace colltherm

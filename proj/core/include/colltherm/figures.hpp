#pragma once

// Parameter sweeps behind the figure tables. Every sweep sets tau = 1 and
// varies gamma, so "gamma_tau" is gamma * tau (or gamma * mean tau).

#include <vector>

#include "colltherm/wtd.hpp"

namespace colltherm {

struct Axis {
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  bool log = false;

  void validate() const;
  std::vector<double> values() const;
};

Axis default_gamma_tau_axis();  ///< [1e-2, 10], 48 log-spaced points
Axis default_nbar_axis();       ///< [0.1, 3], 48 linear points
Axis fig3_gamma_tau_axis();     ///< [1e-3, 1e3], 121 log-spaced points

/// ZZ coupling at g tau = pi/2 with |+x> ancillas.
CollisionSpec standard_zz();
/// Full swap (g tau = pi/2) with ground-state ancillas.
CollisionSpec standard_swap();

/// QFI gained by the second ancilla of a chain started in the Gibbs state,
/// F_2 - F_th, for one waiting time tau. Closed forms are used for
/// standard_zz() and standard_swap(); other protocols run the chain.
double per_ancilla_increment(const EnvironmentParams& env, const CollisionSpec& spec, double tau);

/// per_ancilla_increment averaged over the waiting-time distribution.
double average_increment(const WtdSpec& wtd, double nbar, double gamma, const CollisionSpec& spec,
                         const QuadratureOptions& options = {});

struct Fig1aCell {
  double gamma_tau;
  double nbar;
  double ratio;  ///< increment / F_th
};

struct Fig1bCell {
  double gamma_tau;
  double nbar;
  double mutual_information;
  double discord_a;  ///< measured on the earlier ancilla
  double discord_b;
  double ratio;
};

struct Fig1cCell {
  double gamma_tau;
  double nbar;
  double ratio_r;
  double ratio;
};

struct Fig2Cell {
  double gamma_tau;
  double nbar;
  double averaged;       ///< increment averaged over the WTD
  double deterministic;  ///< increment at the mean waiting time
};

struct Fig3Curve {
  WtdSpec wtd;                 ///< mean_tau unused; set per grid point
  std::vector<double> ratio;   ///< averaged increment / F_th, one per gamma_tau
};

struct Fig3Data {
  std::vector<double> gamma_tau;
  double nbar = 2.0;
  std::vector<Fig3Curve> curves;  ///< deterministic curve first
};

struct PdfCurve {
  WtdSpec wtd;
  std::vector<double> t;
  std::vector<double> density;
};

/// Cells are ordered nbar-major: all gamma_tau values for the first nbar, then the next.
std::vector<Fig1aCell> sweep_fig1a(const CollisionSpec& spec, const Axis& gamma_tau, const Axis& nbar, int threads);
std::vector<Fig1bCell> sweep_fig1b(const CollisionSpec& spec, const Axis& gamma_tau, const Axis& nbar, int threads,
                                   bool with_discord = true);
std::vector<Fig1cCell> sweep_fig1c(const CollisionSpec& spec, int n_ancillas, const Axis& gamma_tau, const Axis& nbar,
                                   int threads);
std::vector<Fig2Cell> sweep_fig2(const CollisionSpec& spec, const WtdSpec& wtd, const Axis& gamma_tau,
                                 const Axis& nbar, int threads);
Fig3Data sweep_fig3(const CollisionSpec& spec, double nbar, const std::vector<double>& weibull_shapes,
                    const Axis& gamma_tau, int threads);

/// Weibull densities at unit mean on an evenly spaced t grid.
std::vector<PdfCurve> fig3_inset(const std::vector<double>& weibull_shapes, double t_max = 10.0, int points = 10001);

/// Index of the largest value (first one on ties).
std::size_t argmax(const std::vector<double>& values);

/// Number of entries strictly greater than threshold.
int count_above(const std::vector<double>& values, double threshold);

}  // namespace colltherm

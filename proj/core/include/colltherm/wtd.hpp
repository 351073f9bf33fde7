#pragma once

// Waiting-time distributions between collisions and averages over them.

#include <cstdint>
#include <functional>
#include <random>

#include "colltherm/engine.hpp"

namespace colltherm {

enum class WtdKind { Deterministic, Exponential, Weibull, Erlang };

struct WtdSpec {
  WtdKind kind = WtdKind::Deterministic;
  double shape = 1.0;     ///< Weibull k or Erlang order; ignored otherwise
  double mean_tau = 1.0;  ///< mean waiting time

  void validate() const;
  /// Scale parameter: lambda = mean / Gamma(1 + 1/k) for Weibull, mean / k per
  /// Erlang stage, mean for Exponential and Deterministic.
  double scale() const;
  /// Mean of the distribution computed from the scale parameter.
  double mean() const;
};

/// Probability density. Throws InvalidArgument for t < 0 or a Deterministic spec.
double pdf(const WtdSpec& spec, double t);

/// Cumulative distribution. A Deterministic spec is a step at mean_tau.
double cdf(const WtdSpec& spec, double t);

/// Inverse CDF given both u and 1 - u, so that the upper tail keeps full precision.
double quantile(const WtdSpec& spec, double u, double one_minus_u);
double quantile(const WtdSpec& spec, double u);

/// Independent random stream for one sample, derived from (seed, index) so
/// that results do not depend on evaluation order.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// One waiting time: inverse CDF for Weibull/Exponential, a sum of
/// exponential stages for Erlang, mean_tau for Deterministic.
double sample(const WtdSpec& spec, SampleStream& stream);

struct QuadratureOptions {
  int nodes_per_panel = 16;  ///< checked against twice as many
  double tolerance = 1e-8;   ///< relative change allowed between the two rules
};

/// Expectation of f(tau) over the distribution, by composite Gauss-Legendre in
/// the CDF variable u with tau = quantile(u). Throws NumericalError if the
/// refined rule changes the result by more than the tolerance.
double average_over_wtd(const WtdSpec& spec, const std::function<double(double)>& f,
                        const QuadratureOptions& options = {});

/// Average of delta_analytic(nbar, gamma (2 nbar + 1) tau) over the distribution.
double average_delta(const WtdSpec& spec, double nbar, double gamma, const QuadratureOptions& options = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< 0 for a single sample
  int samples = 0;
};

/// Mean over sampled waiting-time sequences of the chain QFI w.r.t. nbar.
/// Sample i draws its N - 1 waiting times from SampleStream(seed, i).
McEstimate average_qfi_mc(const WtdSpec& spec, const EnvironmentParams& env, const CollisionSpec& collision,
                          int n_ancillas, int n_samples, std::uint64_t seed, int threads = 1,
                          const ChainOptions& options = {});

/// Sample mean and standard error with pairwise summation.
McEstimate summarize(const std::vector<double>& values);

}  // namespace colltherm

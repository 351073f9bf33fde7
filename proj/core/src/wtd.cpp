#include "colltherm/wtd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "colltherm/fisher.hpp"
#include "colltherm/parallel.hpp"
#include "colltherm/quadrature.hpp"

namespace colltherm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int erlang_order(double shape) { return static_cast<int>(std::lround(shape)); }

// -ln(1 - u), evaluated from whichever of u, 1 - u is the accurate one.
double exp_quantile(double u, double one_minus_u) {
  return u <= 0.5 ? -std::log1p(-u) : -std::log(one_minus_u);
}

// Erlang survival e^{-x} sum_{j<k} x^j / j!.
double erlang_survival(int k, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= x / j;
    sum += term;
  }
  return std::exp(-x) * sum;
}

// Solve erlang CDF(x) = u by bisection on whichever tail is smaller.
double erlang_quantile_unit(int k, double u, double one_minus_u) {
  if (u <= 0.0) return 0.0;
  if (one_minus_u <= 0.0) return std::numeric_limits<double>::infinity();
  double hi = 1.0;
  while (erlang_survival(k, hi) > one_minus_u) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double sf = erlang_survival(k, mid);
    const bool below = u <= 0.5 ? (1.0 - sf) < u : sf > one_minus_u;
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double integrate(const WtdSpec& spec, const std::function<double(double)>& f, int nodes_per_panel) {
  const UnitIntervalRule rule = graded_unit_rule(nodes_per_panel);
  std::vector<double> terms(rule.weights.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = rule.weights[i] * f(quantile(spec, rule.u[i], rule.one_minus_u[i]));
  }
  return pairwise_sum(terms.data(), terms.size());
}

}  // namespace

void WtdSpec::validate() const {
  if (!(mean_tau > 0.0) || !std::isfinite(mean_tau)) throw InvalidArgument("mean waiting time must be positive");
  if (kind == WtdKind::Weibull && (!(shape > 0.0) || !std::isfinite(shape))) {
    throw InvalidArgument("Weibull shape must be positive");
  }
  if (kind == WtdKind::Erlang && (!(shape >= 1.0) || std::abs(shape - erlang_order(shape)) > 1e-12)) {
    throw InvalidArgument("Erlang order must be a positive integer");
  }
}

double WtdSpec::scale() const {
  validate();
  switch (kind) {
    case WtdKind::Weibull:
      return mean_tau / std::tgamma(1.0 + 1.0 / shape);
    case WtdKind::Erlang:
      return mean_tau / erlang_order(shape);
    default:
      return mean_tau;
  }
}

double WtdSpec::mean() const {
  const double lambda = scale();
  switch (kind) {
    case WtdKind::Weibull:
      return lambda * std::tgamma(1.0 + 1.0 / shape);
    case WtdKind::Erlang:
      return lambda * erlang_order(shape);
    default:
      return lambda;
  }
}

double pdf(const WtdSpec& spec, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("pdf requires t >= 0");
  const double lambda = spec.scale();
  switch (spec.kind) {
    case WtdKind::Deterministic:
      throw InvalidArgument("a deterministic waiting time has no density");
    case WtdKind::Exponential:
      return std::exp(-t / lambda) / lambda;
    case WtdKind::Weibull: {
      const double k = spec.shape;
      const double x = t / lambda;
      if (x == 0.0) {
        if (k < 1.0) return std::numeric_limits<double>::infinity();
        return k == 1.0 ? 1.0 / lambda : 0.0;
      }
      return (k / lambda) * std::pow(x, k - 1.0) * std::exp(-std::pow(x, k));
    }
    case WtdKind::Erlang: {
      const int k = erlang_order(spec.shape);
      const double x = t / lambda;
      if (x == 0.0) return k == 1 ? 1.0 / lambda : 0.0;
      return std::exp((k - 1) * std::log(x) - x - std::lgamma(k)) / lambda;
    }
  }
  return 0.0;
}

double cdf(const WtdSpec& spec, double t) {
  if (!(t >= 0.0)) return 0.0;
  const double lambda = spec.scale();
  switch (spec.kind) {
    case WtdKind::Deterministic:
      return t >= spec.mean_tau ? 1.0 : 0.0;
    case WtdKind::Exponential:
      return -std::expm1(-t / lambda);
    case WtdKind::Weibull:
      return -std::expm1(-std::pow(t / lambda, spec.shape));
    case WtdKind::Erlang:
      return 1.0 - erlang_survival(erlang_order(spec.shape), t / lambda);
  }
  return 0.0;
}

double quantile(const WtdSpec& spec, double u, double one_minus_u) {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile requires u in [0, 1]");
  const double lambda = spec.scale();
  switch (spec.kind) {
    case WtdKind::Deterministic:
      return spec.mean_tau;
    case WtdKind::Exponential:
      return lambda * exp_quantile(u, one_minus_u);
    case WtdKind::Weibull:
      return lambda * std::pow(exp_quantile(u, one_minus_u), 1.0 / spec.shape);
    case WtdKind::Erlang:
      return lambda * erlang_quantile_unit(erlang_order(spec.shape), u, one_minus_u);
  }
  return 0.0;
}

double quantile(const WtdSpec& spec, double u) { return quantile(spec, u, 1.0 - u); }

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

double SampleStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double sample(const WtdSpec& spec, SampleStream& stream) {
  const double lambda = spec.scale();
  switch (spec.kind) {
    case WtdKind::Deterministic:
      return spec.mean_tau;
    case WtdKind::Exponential:
      return lambda * -std::log1p(-stream.uniform());
    case WtdKind::Weibull:
      return lambda * std::pow(-std::log1p(-stream.uniform()), 1.0 / spec.shape);
    case WtdKind::Erlang: {
      double total = 0.0;
      for (int j = 0; j < erlang_order(spec.shape); ++j) total += -std::log1p(-stream.uniform());
      return lambda * total;
    }
  }
  return 0.0;
}

double average_over_wtd(const WtdSpec& spec, const std::function<double(double)>& f,
                        const QuadratureOptions& options) {
  spec.validate();
  if (spec.kind == WtdKind::Deterministic) return f(spec.mean_tau);
  if (options.nodes_per_panel < 1) throw InvalidArgument("quadrature needs at least one node per panel");
  const double coarse = integrate(spec, f, options.nodes_per_panel);
  const double fine = integrate(spec, f, 2 * options.nodes_per_panel);
  if (!std::isfinite(fine) || std::abs(fine - coarse) > options.tolerance * std::abs(fine)) {
    throw NumericalError("WTD quadrature did not converge: " + std::to_string(coarse) + " vs " +
                         std::to_string(fine));
  }
  return fine;
}

double average_delta(const WtdSpec& spec, double nbar, double gamma, const QuadratureOptions& options) {
  EnvironmentParams{nbar, gamma}.validate();
  const double rate = gamma * (2.0 * nbar + 1.0);
  return average_over_wtd(spec, [&](double tau) { return delta_analytic(nbar, rate * tau); }, options);
}

McEstimate summarize(const std::vector<double>& values) {
  McEstimate out;
  out.samples = static_cast<int>(values.size());
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = pairwise_sum(values.data(), values.size()) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - out.mean) * (values[i] - out.mean);
    out.std_error = std::sqrt(pairwise_sum(sq.data(), sq.size()) / (n - 1.0) / n);
  }
  return out;
}

McEstimate average_qfi_mc(const WtdSpec& spec, const EnvironmentParams& env, const CollisionSpec& collision,
                          int n_ancillas, int n_samples, std::uint64_t seed, int threads,
                          const ChainOptions& options) {
  spec.validate();
  env.validate();
  if (n_ancillas < 2) throw InvalidArgument("Monte Carlo averaging needs at least two ancillas");
  if (n_ancillas > max_ancillas()) throw ResourceGuardError("chain length exceeds the dimension guard");
  if (n_samples < 1) throw InvalidArgument("Monte Carlo averaging needs at least one sample");

  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    SampleStream stream(seed, i);
    std::vector<double> taus(static_cast<std::size_t>(n_ancillas - 1));
    for (double& t : taus) t = sample(spec, stream);
    values[i] = chain_qfi(env, collision, n_ancillas, taus, options);
  });
  return summarize(values);
}

}  // namespace colltherm

#include "colltherm/model.hpp"

#include <cmath>

namespace colltherm {

namespace {

// Entries of the GAD superoperator and of its derivative share one shape:
// given (p, E) and their first-order changes (dp, dE) the 4 x 4 matrix in
// row-major vec ordering (00, 01, 10, 11) is linear in these.
ComplexMatrix gad_shape(double p, double e, double dp, double de, bool derivative) {
  const double m = 1.0 - e;
  const double dm = -de;
  const double sqrt_e = std::sqrt(e);
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  if (!derivative) {
    s(0, 0) = 1.0 - p * m;
    s(0, 3) = (1.0 - p) * m;
    s(3, 0) = p * m;
    s(3, 3) = e + p * m;
    s(1, 1) = sqrt_e;
    s(2, 2) = sqrt_e;
    return s;
  }
  const double dpm = dp * m + p * dm;
  s(0, 0) = -dpm;
  s(0, 3) = -dp * m + (1.0 - p) * dm;
  s(3, 0) = dpm;
  s(3, 3) = de + dpm;
  const double dsqrt_e = sqrt_e > 0.0 ? 0.5 * de / sqrt_e : 0.0;
  s(1, 1) = dsqrt_e;
  s(2, 2) = dsqrt_e;
  return s;
}

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw InvalidArgument("waiting time must be nonnegative");
}

// exp(m) by scaling and squaring a truncated Taylor series.
ComplexMatrix expm_series(const ComplexMatrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix a = m / std::ldexp(1.0, squarings);
  ComplexMatrix term = identity(m.rows());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

void EnvironmentParams::validate() const {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("nbar must be finite and >= 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and > 0");
}

double excited_population(double nbar) {
  if (!(nbar >= 0.0)) throw InvalidArgument("nbar must be >= 0");
  return nbar / (2.0 * nbar + 1.0);
}

DensityMatrix gibbs_state(double nbar) {
  const double pe = excited_population(nbar);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0 - pe;
  m(1, 1) = pe;
  return DensityMatrix::unchecked(std::move(m), {2});
}

double mean_occupation(double omega, double temperature) {
  if (!(omega > 0.0) || !(temperature > 0.0)) {
    throw InvalidArgument("frequency and temperature must be positive");
  }
  return 1.0 / std::expm1(omega / temperature);
}

double mean_occupation_dT(double omega, double temperature) {
  const double n = mean_occupation(omega, temperature);
  // e^x / (e^x - 1)^2 = n (n + 1)
  return omega / (temperature * temperature) * n * (n + 1.0);
}

ComplexMatrix thermal_superoperator(const EnvironmentParams& env, double tau) {
  env.validate();
  check_tau(tau);
  return gad_shape(excited_population(env.nbar), std::exp(-env.effective_rate(tau)), 0.0, 0.0, false);
}

ComplexMatrix thermal_superoperator_derivative(const EnvironmentParams& env, double tau,
                                               EnvParameter wrt) {
  env.validate();
  check_tau(tau);
  const double s = 2.0 * env.nbar + 1.0;
  const double e = std::exp(-env.effective_rate(tau));
  const double dp = wrt == EnvParameter::Nbar ? 1.0 / (s * s) : 0.0;
  const double drate = wrt == EnvParameter::Nbar ? 2.0 * env.gamma * tau : s * tau;
  return gad_shape(excited_population(env.nbar), e, dp, -e * drate, true);
}

KrausSet thermal_channel(const EnvironmentParams& env, double tau) {
  env.validate();
  check_tau(tau);
  if (tau == 0.0) return KrausSet({identity(2)});

  const double eta = -std::expm1(-env.effective_rate(tau));
  const double keep = std::sqrt(1.0 - eta);
  const double p_decay = (env.nbar + 1.0) / (2.0 * env.nbar + 1.0);
  const double p_excite = 1.0 - p_decay;

  std::vector<ComplexMatrix> ops;
  auto add = [&ops](double weight, double a, double b, double c, double d) {
    if (weight <= 0.0) return;
    ComplexMatrix k(2, 2);
    k << a, b, c, d;
    ops.push_back(std::sqrt(weight) * k);
  };
  add(p_decay, 1.0, 0.0, 0.0, keep);
  add(p_decay, 0.0, std::sqrt(eta), 0.0, 0.0);
  add(p_excite, keep, 0.0, 0.0, 1.0);
  add(p_excite, 0.0, 0.0, std::sqrt(eta), 0.0);
  return KrausSet(std::move(ops));
}

ComplexMatrix lindblad_generator(const EnvironmentParams& env) {
  env.validate();
  const ComplexMatrix id = identity(2);
  // Row-major vec: vec(A X B) = (A (x) B^T) vec(X).
  auto dissipator = [&id](const ComplexMatrix& a) {
    const ComplexMatrix ada = a.adjoint() * a;
    return ComplexMatrix(kron(a, a.conjugate()) - 0.5 * kron(ada, id) - 0.5 * kron(id, ada.transpose()));
  };
  return env.gamma * (env.nbar + 1.0) * dissipator(sigma_minus()) +
         env.gamma * env.nbar * dissipator(sigma_plus());
}

DensityMatrix lindblad_oracle(const EnvironmentParams& env, double tau, const DensityMatrix& rho) {
  check_tau(tau);
  if (rho.dim() != 2) throw InvalidArgument("lindblad_oracle expects a single-qubit state");
  const ComplexMatrix propagator = expm_series(tau * lindblad_generator(env));
  Eigen::VectorXcd v(4);
  v << rho.matrix()(0, 0), rho.matrix()(0, 1), rho.matrix()(1, 0), rho.matrix()(1, 1);
  const Eigen::VectorXcd w = propagator * v;
  ComplexMatrix out(2, 2);
  out << w(0), w(1), w(2), w(3);
  return DensityMatrix::unchecked(std::move(out), {2});
}

ComplexMatrix collision_hamiltonian(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::ZZ:
      return 0.5 * kron(pauli_z(), pauli_z());
    case InteractionKind::Swap:
      return kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus());
  }
  throw InvalidArgument("unknown interaction kind");
}

ComplexMatrix collision_unitary(InteractionKind kind, double g_tau) {
  if (!std::isfinite(g_tau)) throw InvalidArgument("g_tau must be finite");
  return unitary_from_hamiltonian(collision_hamiltonian(kind), g_tau);
}

ComplexMatrix collision_unitary(const CollisionSpec& spec) {
  return collision_unitary(spec.kind, spec.g_tau);
}

DensityMatrix ancilla_plus_x() {
  Eigen::VectorXcd psi(2);
  psi << 1.0, 1.0;
  return DensityMatrix::pure(psi, {2});
}

DensityMatrix ancilla_ground() {
  Eigen::VectorXcd psi(2);
  psi << 1.0, 0.0;
  return DensityMatrix::pure(psi, {2});
}

}  // namespace colltherm

#include "colltherm/engine.hpp"

#include <array>
#include <numeric>
#include <string>

namespace colltherm {

namespace {

constexpr std::array<int, 1> kSystem{0};

void validate_chain(const EnvironmentParams& env, const CollisionSpec& spec, int n_ancillas,
                    std::span<const double> taus) {
  env.validate();
  if (n_ancillas < 1) throw InvalidArgument("chain needs at least one ancilla");
  if (n_ancillas > max_ancillas()) {
    throw ResourceGuardError("chain of " + std::to_string(n_ancillas) +
                             " ancillas exceeds the dimension guard");
  }
  if (static_cast<int>(taus.size()) != n_ancillas - 1) {
    throw InvalidArgument("expected " + std::to_string(n_ancillas - 1) + " waiting times, got " +
                          std::to_string(taus.size()));
  }
  for (double t : taus) {
    if (!(t >= 0.0)) throw InvalidArgument("waiting times must be nonnegative");
  }
  if (spec.ancilla_prep.dim() != 2) throw InvalidArgument("ancilla preparation must be a qubit state");
}

std::vector<int> ancilla_indices(int n_qubits) {
  std::vector<int> keep(n_qubits - 1);
  std::iota(keep.begin(), keep.end(), 1);
  return keep;
}

}  // namespace

int max_ancillas() {
  int qubits = 0;
  while ((Eigen::Index{1} << (qubits + 1)) <= kMaxDimension) ++qubits;
  return qubits - 1;
}

ChainResult run_chain(const EnvironmentParams& env, const CollisionSpec& spec, int n_ancillas,
                      std::span<const double> taus, const ChainOptions& options) {
  validate_chain(env, spec, n_ancillas, taus);
  const ComplexMatrix u = collision_unitary(spec);

  DensityMatrix rho = options.initial_system ? *options.initial_system : gibbs_state(env.nbar);
  if (rho.dim() != 2) throw InvalidArgument("initial system state must be a qubit state");
  if (options.initial_thermalization) {
    rho = apply_on_subsystems(rho, thermal_channel(env, *options.initial_thermalization), kSystem);
  }

  for (int i = 0; i < n_ancillas; ++i) {
    rho = kron(rho, spec.ancilla_prep);
    const std::array<int, 2> targets{0, rho.subsystem_count() - 1};
    rho = apply_on_subsystems(rho, u, targets);
    if (i + 1 < n_ancillas) rho = apply_on_subsystems(rho, thermal_channel(env, taus[i]), kSystem);
  }

  const int n_qubits = rho.subsystem_count();
  return ChainResult{
      partial_trace(rho, ancilla_indices(n_qubits)),
      partial_trace(rho, kSystem),
      std::vector<double>(taus.begin(), taus.end()),
      options.initial_thermalization.has_value(),
      rho,
  };
}

ChainTangent run_chain_tangent(const EnvironmentParams& env, const CollisionSpec& spec,
                               int n_ancillas, std::span<const double> taus,
                               std::span<const EnvParameter> wrt, const ChainOptions& options) {
  validate_chain(env, spec, n_ancillas, taus);
  const ComplexMatrix u = collision_unitary(spec);
  const ComplexMatrix prep = spec.ancilla_prep.matrix();

  ComplexMatrix rho;
  std::vector<ComplexMatrix> d(wrt.size(), ComplexMatrix::Zero(2, 2));
  if (options.initial_system) {
    rho = options.initial_system->matrix();
    if (rho.rows() != 2) throw InvalidArgument("initial system state must be a qubit state");
    if (!options.initial_system_derivatives.empty()) {
      if (options.initial_system_derivatives.size() != wrt.size()) {
        throw InvalidArgument("one initial-state derivative per parameter is required");
      }
      d = options.initial_system_derivatives;
    }
  } else {
    rho = gibbs_state(env.nbar).matrix();
    const double s = 2.0 * env.nbar + 1.0;
    for (std::size_t k = 0; k < wrt.size(); ++k) {
      if (wrt[k] == EnvParameter::Nbar) {
        d[k](0, 0) = -1.0 / (s * s);
        d[k](1, 1) = 1.0 / (s * s);
      }
    }
  }

  std::vector<int> dims{2};
  auto thermalize = [&](double tau) {
    const ComplexMatrix sop = thermal_superoperator(env, tau);
    for (std::size_t k = 0; k < wrt.size(); ++k) {
      d[k] = apply_superoperator(d[k], dims, sop, kSystem) +
             apply_superoperator(rho, dims, thermal_superoperator_derivative(env, tau, wrt[k]), kSystem);
    }
    rho = apply_superoperator(rho, dims, sop, kSystem);
  };

  if (options.initial_thermalization) thermalize(*options.initial_thermalization);

  for (int i = 0; i < n_ancillas; ++i) {
    rho = kron(rho, prep);
    for (auto& dk : d) dk = kron(dk, prep);
    dims.push_back(2);
    const std::array<int, 2> targets{0, static_cast<int>(dims.size()) - 1};
    rho = sandwich_on_subsystems(rho, dims, u, u, targets);
    for (auto& dk : d) dk = sandwich_on_subsystems(dk, dims, u, u, targets);
    if (i + 1 < n_ancillas) thermalize(taus[i]);
  }

  const auto keep = ancilla_indices(static_cast<int>(dims.size()));
  ChainTangent out{
      DensityMatrix::unchecked(partial_trace(rho, dims, keep), std::vector<int>(keep.size(), 2)),
      {},
  };
  for (const auto& dk : d) out.derivatives.push_back(partial_trace(dk, dims, keep));
  return out;
}

StroboscopicMap stroboscopic_map(const EnvironmentParams& env, const CollisionSpec& spec, double tau) {
  env.validate();
  if (!(tau >= 0.0)) throw InvalidArgument("waiting time must be nonnegative");
  return [channel = thermal_channel(env, tau), u = collision_unitary(spec),
          prep = spec.ancilla_prep](const DensityMatrix& rho) {
    if (rho.dim() != 2) throw InvalidArgument("stroboscopic map acts on a single qubit");
    const DensityMatrix relaxed = apply_on_subsystems(rho, channel, kSystem);
    const std::array<int, 2> targets{0, 1};
    const DensityMatrix collided = apply_on_subsystems(kron(relaxed, prep), u, targets);
    return partial_trace(collided, kSystem);
  };
}

DensityMatrix steady_state(const StroboscopicMap& map, const SteadyStateOptions& options) {
  DensityMatrix rho = DensityMatrix::unchecked(0.5 * identity(2), {2});
  for (int it = 0; it < options.max_iterations; ++it) {
    DensityMatrix next = map(rho);
    const double change = max_abs(next.matrix() - rho.matrix());
    rho = std::move(next);
    if (change < options.tolerance) return rho;
  }
  throw NumericalError("steady_state: no convergence after " + std::to_string(options.max_iterations) +
                       " iterations");
}

}  // namespace colltherm

#include "colltherm/fisher.hpp"

#include <array>
#include <cmath>
#include <string>

namespace colltherm {

namespace {

constexpr double kSupportCutoff = 1e-12;
constexpr double kResidualTolerance = 1e-8;
constexpr double kOutcomeCutoff = 1e-14;

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Re tr(a b) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

ComplexMatrix to_eigenbasis(const EigenDecomposition& eig, const ComplexMatrix& m) {
  return eig.vectors.adjoint() * m * eig.vectors;
}

void check_same_dim(const DensityMatrix& rho, const ComplexMatrix& drho) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw InvalidArgument("state derivative has the wrong dimension");
  }
}

}  // namespace

void ParamPoint::validate() const {
  if (!(nbar > 0.0) || !(gamma > 0.0)) throw InvalidArgument("parameter point must be strictly positive");
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidArgument("POVM has no elements");
  const Eigen::Index d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw InvalidArgument("POVM elements must share one square dimension");
    if (!is_hermitian(e)) throw InvalidArgument("POVM element is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStateTolerance) throw InvalidArgument("POVM element is not positive");
    sum += e;
  }
  if (max_abs(sum - identity(d)) > kStateTolerance) throw InvalidArgument("POVM elements do not sum to identity");
}

double thermal_fi_nbar(double nbar) {
  if (!(nbar > 0.0)) throw InvalidArgument("thermal Fisher information diverges at nbar <= 0");
  const double s = 2.0 * nbar + 1.0;
  return 1.0 / (nbar * (nbar + 1.0) * s * s);
}

double thermal_fi_T(double omega, double temperature) {
  const double dn = mean_occupation_dT(omega, temperature);
  return thermal_fi_nbar(mean_occupation(omega, temperature)) * dn * dn;
}

double default_step(double theta) { return 1e-5 * std::max(1.0, std::abs(theta)); }

ComplexMatrix drho_dtheta(const StateFamily& family, double theta, const DerivativeOptions& options) {
  const double h = options.step > 0.0 ? options.step : default_step(theta);
  auto central = [&](double step) {
    return ComplexMatrix((family(theta + step).matrix() - family(theta - step).matrix()) / (2.0 * step));
  };
  if (!options.richardson) return central(h);
  return ComplexMatrix((4.0 * central(0.5 * h) - central(h)) / 3.0);
}

ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho) {
  check_same_dim(rho, drho);
  if (!is_hermitian(drho, 1e-8)) throw InvalidArgument("sld: state derivative is not Hermitian");
  const EigenDecomposition eig = clipped_spectrum(rho);
  const ComplexMatrix d = to_eigenbasis(eig, drho);
  const Eigen::Index n = d.rows();
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = eig.values(i) + eig.values(j);
      if (s >= kSupportCutoff) l(i, j) = 2.0 * d(i, j) / s;
    }
  }
  ComplexMatrix out = eig.vectors * l * eig.vectors.adjoint();
  const double residual = sld_residual(rho, drho, out);
  if (residual > kResidualTolerance) {
    throw NumericalError("sld: residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

double sld_residual(const DensityMatrix& rho, const ComplexMatrix& drho, const ComplexMatrix& l) {
  check_same_dim(rho, drho);
  const EigenDecomposition eig = clipped_spectrum(rho);
  ComplexMatrix support = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) >= kSupportCutoff) support += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix mismatch = drho - 0.5 * (l * r + r * l);
  return max_abs(support * mismatch * support);
}

double qfi(const DensityMatrix& rho, const ComplexMatrix& drho) {
  const ComplexMatrix l = sld(rho, drho);
  return std::max(0.0, real_trace_product(rho.matrix(), l * l));
}

double qfi_of_state(const StateFamily& family, double theta, const DerivativeOptions& options) {
  return qfi(family(theta), drho_dtheta(family, theta, options));
}

double classical_fi(const DensityMatrix& rho, const ComplexMatrix& drho, const Povm& povm) {
  check_same_dim(rho, drho);
  if (povm.dim() != rho.dim()) throw InvalidArgument("POVM dimension does not match the state");
  double f = 0.0;
  for (const auto& e : povm.elements()) {
    const double p = real_trace_product(e, rho.matrix());
    if (p <= kOutcomeCutoff) continue;
    const double dp = real_trace_product(e, drho);
    f += dp * dp / p;
  }
  return f;
}

double classical_fi(const StateFamily& family, double theta, const Povm& povm,
                    const DerivativeOptions& options) {
  return classical_fi(family(theta), drho_dtheta(family, theta, options), povm);
}

Povm eigenbasis_povm(const ComplexMatrix& hermitian) {
  const EigenDecomposition eig = herm_eig(hermitian);
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index i = 0; i < eig.vectors.cols(); ++i) {
    elements.push_back(eig.vectors.col(i) * eig.vectors.col(i).adjoint());
  }
  return Povm(std::move(elements));
}

Povm optimal_measurement_basis(int n_ancillas) {
  if (n_ancillas < 1) throw InvalidArgument("need at least one ancilla");
  // 2^N projectors of dimension 2^N: cap the total storage at 2^24 entries.
  if (n_ancillas > 8) throw ResourceGuardError("product POVM on more than 8 ancillas exceeds the memory guard");
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<Eigen::Vector2cd, 2> y{
      Eigen::Vector2cd(r, Complex(0.0, r)),
      Eigen::Vector2cd(r, Complex(0.0, -r)),
  };
  std::vector<Eigen::VectorXcd> vectors{Eigen::VectorXcd::Ones(1)};
  for (int q = 0; q < n_ancillas; ++q) {
    std::vector<Eigen::VectorXcd> next;
    for (const auto& v : vectors) {
      for (const auto& f : y) {
        Eigen::VectorXcd w(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
          w(2 * i) = v(i) * f(0);
          w(2 * i + 1) = v(i) * f(1);
        }
        next.push_back(std::move(w));
      }
    }
    vectors = std::move(next);
  }
  std::vector<ComplexMatrix> elements;
  elements.reserve(vectors.size());
  for (const auto& v : vectors) elements.push_back(v * v.adjoint());
  return Povm(std::move(elements));
}

double delta_analytic(double nbar, double rate) {
  if (!(nbar > 0.0)) throw InvalidArgument("delta_analytic requires nbar > 0");
  if (!(rate >= 0.0)) throw InvalidArgument("delta_analytic requires Gamma >= 0");
  if (rate == 0.0) return 0.0;
  if (std::isinf(rate)) return thermal_fi_nbar(nbar);

  const double s = 2.0 * nbar + 1.0;
  const double e = std::exp(-rate);
  const double m = -std::expm1(-rate);  // 1 - e^-Gamma
  const double rate_e = rate * e;

  // (2n+1)^2 dP/dnbar for the g -> e and e -> g transitions.
  const double up = m + 2.0 * nbar * rate_e;
  const double down = m - 2.0 * (nbar + 1.0) * rate_e;

  const double from_ground = (nbar + 1.0) * up * up / (nbar * m * (1.0 - nbar * m / s));
  const double from_excited = nbar * down * down / ((nbar + 1.0) * m * (1.0 - (nbar + 1.0) * m / s));
  return (from_ground + from_excited) / (s * s * s * s);
}

double swap_increment_analytic(double nbar, double rate) {
  if (!(nbar > 0.0)) throw InvalidArgument("swap_increment_analytic requires nbar > 0");
  if (!(rate >= 0.0)) throw InvalidArgument("swap_increment_analytic requires Gamma >= 0");
  if (rate == 0.0) return 0.0;
  if (std::isinf(rate)) return thermal_fi_nbar(nbar);

  const double s = 2.0 * nbar + 1.0;
  const double m = -std::expm1(-rate);
  const double up = m + 2.0 * nbar * rate * std::exp(-rate);
  const double excited = nbar * m / s;
  return up * up / (s * s * s * s * excited * (1.0 - excited));
}

double qfi_deterministic_N(double nbar, double rate, int n_ancillas) {
  if (n_ancillas < 1) throw InvalidArgument("need at least one ancilla");
  return thermal_fi_nbar(nbar) + (n_ancillas - 1) * delta_analytic(nbar, rate);
}

Eigen::MatrixXd qfi_matrix(const DensityMatrix& rho, std::span<const ComplexMatrix> derivatives) {
  const EigenDecomposition eig = clipped_spectrum(rho);
  const auto m = static_cast<Eigen::Index>(derivatives.size());
  std::vector<ComplexMatrix> d;
  for (const auto& dr : derivatives) {
    check_same_dim(rho, dr);
    d.push_back(to_eigenbasis(eig, dr));
    // Validates the residual of each SLD.
    sld(rho, dr);
  }
  const Eigen::Index n = rho.dim();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double s = eig.values(i) + eig.values(j);
          if (s >= kSupportCutoff) acc += 2.0 * (d[a](i, j) * std::conj(d[b](i, j))).real() / s;
        }
      }
      f(a, b) = acc;
      f(b, a) = acc;
    }
  }
  return f;
}

Eigen::MatrixXd qfi_matrix(const StateFamily2& family, const ParamPoint& point,
                           const DerivativeOptions& options) {
  point.validate();
  const DensityMatrix rho = family(point.nbar, point.gamma);
  std::vector<ComplexMatrix> derivs;
  derivs.push_back(drho_dtheta([&](double n) { return family(n, point.gamma); }, point.nbar, options));
  if (point.which == EstimatedParams::NbarAndGamma) {
    derivs.push_back(drho_dtheta([&](double g) { return family(point.nbar, g); }, point.gamma, options));
  }
  return qfi_matrix(rho, derivs);
}

Eigen::MatrixXd chain_qfi_matrix(const EnvironmentParams& env, const CollisionSpec& spec,
                                 int n_ancillas, std::span<const double> taus,
                                 const ChainOptions& options) {
  constexpr std::array<EnvParameter, 2> params{EnvParameter::Nbar, EnvParameter::Gamma};
  const ChainTangent t = run_chain_tangent(env, spec, n_ancillas, taus, params, options);
  return qfi_matrix(t.joint_ancillas, t.derivatives);
}

double ratio_R(const Eigen::MatrixXd& f) {
  if (f.rows() != f.cols() || f.rows() < 1) throw InvalidArgument("ratio_R expects a square matrix");
  double inv_diag = 0.0;
  for (Eigen::Index a = 0; a < f.rows(); ++a) {
    if (!(f(a, a) > 0.0)) throw NumericalError("ratio_R: parameter carries no information (F_aa = 0)");
    inv_diag += 1.0 / f(a, a);
  }
  if (f.rows() == 2) {
    // tr(F^-1) = (F11 + F22) / det, so R = F11 F22 / det = 1 / (1 - c^2).
    const double c2 = f(0, 1) * f(1, 0) / (f(0, 0) * f(1, 1));
    if (!(c2 < 1.0 - 1e-14)) throw NumericalError("ratio_R: singular QFI matrix");
    return 1.0 / (1.0 - c2);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(f);
  if (llt.info() != Eigen::Success) throw NumericalError("ratio_R: singular QFI matrix");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(f.rows(), f.cols()));
  return inv.trace() / inv_diag;
}

StateFamily chain_family_nbar(const EnvironmentParams& env, const CollisionSpec& spec,
                              int n_ancillas, std::vector<double> taus, ChainOptions options) {
  return [env, spec, n_ancillas, taus = std::move(taus), options = std::move(options)](double nbar) {
    EnvironmentParams shifted = env;
    shifted.nbar = nbar;
    return run_chain(shifted, spec, n_ancillas, taus, options).joint_ancillas;
  };
}

double chain_qfi(const EnvironmentParams& env, const CollisionSpec& spec, int n_ancillas,
                 std::span<const double> taus, const ChainOptions& options) {
  const auto family = chain_family_nbar(env, spec, n_ancillas, std::vector<double>(taus.begin(), taus.end()), options);
  return qfi_of_state(family, env.nbar);
}

}  // namespace colltherm

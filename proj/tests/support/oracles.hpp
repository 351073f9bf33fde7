#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond Eigen types: operators are built on the full Hilbert
// space, the master equation is integrated directly, and the QFI is obtained
// from the Lyapunov equation rather than from an eigenbasis formula.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat ident(int d) { return Mat::Identity(d, d); }

inline Mat sm() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
inline Mat sp() { return sm().adjoint(); }
inline Mat sz() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

/// Kronecker product by explicit index arithmetic.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Single-qubit operator acting on qubit q of n.
inline Mat embed1(const Mat& op, int q, int n) {
  Mat out = Mat::Ones(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, i == q ? op : ident(2));
  return out;
}

/// Two-qubit operator (4x4, order (a, b)) acting on qubits a != b of n, by
/// matrix elements over computational basis states.
inline Mat embed2(const Mat& op, int a, int b, int n) {
  const int d = 1 << n;
  Mat out = Mat::Zero(d, d);
  auto bit = [n](int x, int q) { return (x >> (n - 1 - q)) & 1; };
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      bool rest_equal = true;
      for (int q = 0; q < n; ++q) {
        if (q != a && q != b && bit(r, q) != bit(c, q)) rest_equal = false;
      }
      if (!rest_equal) continue;
      out(r, c) = op(2 * bit(r, a) + bit(r, b), 2 * bit(c, a) + bit(c, b));
    }
  }
  return out;
}

/// exp(m) by a Taylor series after scaling by a power of two, then squaring.
inline Mat expm(const Mat& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  const Mat a = m / std::ldexp(1.0, squarings);
  Mat term = ident(static_cast<int>(m.rows()));
  Mat sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Trace over qubit q of an n-qubit operator.
inline Mat trace_out(const Mat& m, int q, int n) {
  const int d = 1 << (n - 1);
  Mat out = Mat::Zero(d, d);
  auto insert = [n, q](int x, int v) {
    const int low_bits = n - 1 - q;
    const int high = x >> low_bits;
    const int low = x & ((1 << low_bits) - 1);
    return (high << (low_bits + 1)) | (v << low_bits) | low;
  };
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      for (int v = 0; v < 2; ++v) out(r, c) += m(insert(r, v), insert(c, v));
  return out;
}

/// Thermal master equation on qubit q of n, integrated with classical RK4.
inline Mat relax(const Mat& rho, int q, int n, double nbar, double gamma, double tau, int steps = 4000) {
  if (tau == 0.0) return rho;
  const Mat lm = embed1(sm(), q, n);
  const Mat lp = embed1(sp(), q, n);
  const Mat nm = lm.adjoint() * lm;
  const Mat np = lp.adjoint() * lp;
  auto rhs = [&](const Mat& r) {
    return (gamma * (nbar + 1.0)) * (lm * r * lm.adjoint() - 0.5 * (nm * r + r * nm)) +
           (gamma * nbar) * (lp * r * lp.adjoint() - 0.5 * (np * r + r * np));
  };
  const double h = tau / steps;
  Mat r = rho;
  for (int s = 0; s < steps; ++s) {
    const Mat k1 = rhs(r);
    const Mat k2 = rhs(r + 0.5 * h * k1);
    const Mat k3 = rhs(r + 0.5 * h * k2);
    const Mat k4 = rhs(r + h * k3);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return r;
}

enum class Coupling { ZZ, Swap };

inline Mat coupling_hamiltonian(Coupling c) {
  if (c == Coupling::ZZ) return 0.5 * kron(sz(), sz());
  return kron(sp(), sm()) + kron(sm(), sp());
}

/// Joint state of N ancillas after the chain, built on the full space of S
/// plus all N ancillas from the start.
inline Mat chain_ancillas(Coupling c, double g_tau, const Mat& prep, double nbar, double gamma,
                          const std::vector<double>& taus, int n_ancillas) {
  const int n = n_ancillas + 1;
  const double pe = nbar / (2.0 * nbar + 1.0);
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = 1.0 - pe;
  s(1, 1) = pe;
  Mat rho = s;
  for (int i = 0; i < n_ancillas; ++i) rho = kron(rho, prep);
  const Mat u2 = expm(C(0.0, -g_tau) * coupling_hamiltonian(c));
  for (int i = 0; i < n_ancillas; ++i) {
    const Mat u = embed2(u2, 0, i + 1, n);
    rho = u * rho * u.adjoint();
    if (i + 1 < n_ancillas) rho = relax(rho, 0, n, nbar, gamma, taus[i]);
  }
  return trace_out(rho, 0, n);
}

/// QFI from the SLD solved as the linear system rho L + L rho = 2 d rho in
/// vectorized form, restricted to the support through a pseudo-inverse.
inline double qfi_lyapunov(const Mat& rho, const Mat& drho) {
  const int d = static_cast<int>(rho.rows());
  const Mat op = kron(rho, ident(d)) + kron(ident(d), rho.transpose());
  Eigen::VectorXcd rhs(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rhs(i * d + j) = 2.0 * drho(i, j);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(op);
  cod.setThreshold(1e-12);
  const Eigen::VectorXcd l = cod.solve(rhs);
  Mat lm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lm(i, j) = l(i * d + j);
  return (drho * lm).trace().real();
}

/// QFI w.r.t. a scalar parameter by fourth-order central differences of the
/// family, then the Lyapunov route.
inline double qfi_of(const std::function<Mat(double)>& family, double x, double h = 1e-3) {
  const Mat d = (family(x - 2 * h) - 8.0 * family(x - h) + 8.0 * family(x + h) - family(x + 2 * h)) / (12.0 * h);
  return qfi_lyapunov(family(x), d);
}

/// Von Neumann entropy via Eigen's solver (nats).
inline double entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log(l);
  }
  return s;
}

/// Discord of a two-qubit state measured on qubit 0 by brute force over a
/// dense (theta, phi) grid of projective measurements, full-matrix algebra.
inline double discord_bruteforce(const Mat& rho, int theta_points = 181, int phi_points = 360) {
  const Mat rho_a = trace_out(rho, 1, 2);
  double best = 1e300;
  for (int i = 0; i < theta_points; ++i) {
    const double th = M_PI * i / (theta_points - 1);
    for (int j = 0; j < phi_points; ++j) {
      const double ph = 2.0 * M_PI * j / phi_points;
      Eigen::Vector2cd v(std::cos(th / 2), std::exp(C(0, ph)) * std::sin(th / 2));
      Eigen::Vector2cd w(-std::exp(C(0, -ph)) * std::sin(th / 2), std::cos(th / 2));
      double cond = 0.0;
      for (const Eigen::Vector2cd& x : {v, w}) {
        const Mat proj = kron(x * x.adjoint(), ident(2));
        const Mat post = proj * rho * proj;
        const double p = post.trace().real();
        if (p > 1e-14) cond += p * entropy(trace_out(post / p, 0, 2));
      }
      best = std::min(best, cond);
    }
  }
  return entropy(rho_a) - entropy(rho) + best;
}

/// Haar-ish random generators on a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  Mat ginibre(int d) {
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = C(normal(), normal());
    return g;
  }

  /// Random full-rank density matrix (Ginibre ensemble), optionally mixed with
  /// a rank-one part to reach near-pure states.
  Mat density(int d) {
    const Mat g = ginibre(d);
    Mat r = g * g.adjoint();
    return r / r.trace();
  }

  Mat pure(int d) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = C(normal(), normal());
    v.normalize();
    return v * v.adjoint();
  }

  Mat unitary(int d) {
    Eigen::HouseholderQR<Mat> qr(ginibre(d));
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int i = 0; i < d; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
    return q;
  }

  Mat hermitian(int d) {
    const Mat g = ginibre(d);
    return 0.5 * (g + g.adjoint());
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle

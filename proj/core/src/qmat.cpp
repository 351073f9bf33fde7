#include "colltherm/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace colltherm {

namespace {

Eigen::Index product(std::span<const int> dims) {
  Eigen::Index p = 1;
  for (int d : dims) p *= d;
  return p;
}

void check_dims(Eigen::Index dim, std::span<const int> dims) {
  if (dims.empty()) throw InvalidArgument("subsystem list is empty");
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("subsystem dimension must be positive");
  }
  if (product(dims) != dim) {
    throw InvalidArgument("subsystem dimensions do not multiply to the matrix dimension");
  }
}

void guard(Eigen::Index dim) {
  if (dim > kMaxDimension) {
    throw ResourceGuardError("Hilbert-space dimension " + std::to_string(dim) +
                             " exceeds the maximum " + std::to_string(kMaxDimension));
  }
}

// Offsets of every multi-index over `selected` (first entry most significant)
// in the row-major joint index over `dims`.
std::vector<Eigen::Index> offsets(std::span<const int> dims, std::span<const int> selected) {
  const auto n = static_cast<int>(dims.size());
  std::vector<Eigen::Index> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<Eigen::Index> out{0};
  for (int s : selected) {
    std::vector<Eigen::Index> next;
    next.reserve(out.size() * dims[s]);
    for (Eigen::Index base : out) {
      for (int i = 0; i < dims[s]; ++i) next.push_back(base + i * stride[s]);
    }
    out = std::move(next);
  }
  return out;
}

std::vector<int> complement(int n, std::span<const int> selected) {
  std::vector<int> rest;
  for (int k = 0; k < n; ++k) {
    if (std::find(selected.begin(), selected.end(), k) == selected.end()) rest.push_back(k);
  }
  return rest;
}

void check_targets(std::span<const int> dims, std::span<const int> targets, Eigen::Index op_dim) {
  const auto n = static_cast<int>(dims.size());
  if (targets.empty()) throw InvalidArgument("target list is empty");
  std::vector<int> seen;
  Eigen::Index d = 1;
  for (int t : targets) {
    if (t < 0 || t >= n) throw InvalidArgument("target subsystem index out of range");
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) {
      throw InvalidArgument("duplicate target subsystem");
    }
    seen.push_back(t);
    d *= dims[t];
  }
  if (d != op_dim) throw InvalidArgument("operator dimension does not match target subsystems");
}

}  // namespace

// -- DensityMatrix ------------------------------------------------------------

DensityMatrix::DensityMatrix(NoCheck, ComplexMatrix mat, std::vector<int> subsystem_dims)
    : mat_(std::move(mat)), dims_(std::move(subsystem_dims)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  check_dims(mat_.rows(), dims_);
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, std::vector<int> subsystem_dims)
    : DensityMatrix(NoCheck{}, std::move(mat), std::move(subsystem_dims)) {
  const InvariantReport r = check();
  if (r.hermiticity_error > kStateTolerance) throw InvalidArgument("density matrix is not Hermitian");
  if (r.trace_error > kStateTolerance) throw InvalidArgument("density matrix does not have unit trace");
  if (r.min_eigenvalue < -kStateTolerance) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat)
    : DensityMatrix(mat, std::vector<int>{static_cast<int>(mat.rows())}) {}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix mat, std::vector<int> subsystem_dims) {
  return DensityMatrix(NoCheck{}, std::move(mat), std::move(subsystem_dims));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi, std::vector<int> subsystem_dims) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgument("zero state vector");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(NoCheck{}, v * v.adjoint(), std::move(subsystem_dims));
}

InvariantReport DensityMatrix::check() const {
  InvariantReport r;
  r.hermiticity_error = max_abs(mat_ - mat_.adjoint());
  r.trace_error = std::abs(mat_.trace() - Complex(1.0, 0.0));
  const ComplexMatrix h = 0.5 * (mat_ + mat_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

// -- KrausSet -----------------------------------------------------------------

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw InvalidArgument("Kraus set is empty");
  const Eigen::Index d = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw InvalidArgument("Kraus operators must be square and of equal dimension");
  }
  if (completeness_error() > kStateTolerance) {
    throw InvalidArgument("Kraus set is not trace preserving");
  }
}

double KrausSet::completeness_error() const {
  const Eigen::Index d = dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return max_abs(sum - identity(d));
}

// -- basic matrices -------------------------------------------------------------

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << -1.0, 0.0, 0.0, 1.0;
  return m;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// -- tensor products ----------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  guard(std::max(rows, cols));
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), std::move(dims));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  check_dims(m.rows(), dims);
  if (keep.empty()) throw InvalidArgument("partial trace must keep at least one subsystem");
  const auto n = static_cast<int>(dims.size());
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (kept[k] < 0 || kept[k] >= n) throw InvalidArgument("subsystem index out of range");
    if (k > 0 && kept[k] == kept[k - 1]) throw InvalidArgument("duplicate subsystem index");
  }
  const auto keep_off = offsets(dims, kept);
  const auto trace_off = offsets(dims, complement(n, kept));
  const auto d = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Complex acc = 0.0;
      for (Eigen::Index t : trace_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<int> dims;
  for (int k : kept) dims.push_back(rho.dims()[k]);
  return DensityMatrix::unchecked(std::move(reduced), std::move(dims));
}

// -- spectra ------------------------------------------------------------------

EigenDecomposition herm_eig(const ComplexMatrix& a) {
  if (!is_hermitian(a)) throw InvalidArgument("herm_eig: matrix is not Hermitian");
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
  const EigenDecomposition eig = herm_eig(h);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.values(i) * t));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

EigenDecomposition clipped_spectrum(const DensityMatrix& rho) {
  EigenDecomposition eig = herm_eig(rho.matrix());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -kStateTolerance) {
      throw InvalidArgument("state has a negative eigenvalue below tolerance");
    }
    if (eig.values(i) < 0.0) eig.values(i) = 0.0;
  }
  return eig;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector lambda = clipped_spectrum(rho).values;
  double s = 0.0;
  for (double l : lambda) {
    if (l > 1e-14) s -= l * std::log(l);
  }
  return s;
}

// -- local operations ---------------------------------------------------------

ComplexMatrix sandwich_on_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                     const ComplexMatrix& left, const ComplexMatrix& right,
                                     std::span<const int> targets) {
  check_dims(m.rows(), dims);
  check_targets(dims, targets, left.rows());
  if (left.cols() != left.rows() || right.rows() != left.rows() || right.cols() != left.cols()) {
    throw InvalidArgument("local operators must be square and of equal dimension");
  }
  const auto n = static_cast<int>(dims.size());
  const auto toff = offsets(dims, targets);
  const auto roff = offsets(dims, complement(n, targets));
  const auto dt = static_cast<Eigen::Index>(toff.size());
  const Eigen::Index dim = m.rows();

  // left * m
  ComplexMatrix tmp(dim, dim);
  Eigen::VectorXcd v(dt);
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index r : roff) {
      for (Eigen::Index t = 0; t < dt; ++t) v(t) = m(r + toff[t], col);
      const Eigen::VectorXcd w = left * v;
      for (Eigen::Index t = 0; t < dt; ++t) tmp(r + toff[t], col) = w(t);
    }
  }
  // (left * m) * right^dag
  const ComplexMatrix rconj = right.conjugate();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index r : roff) {
      for (Eigen::Index t = 0; t < dt; ++t) v(t) = tmp(row, r + toff[t]);
      const Eigen::VectorXcd w = rconj * v;
      for (Eigen::Index t = 0; t < dt; ++t) out(row, r + toff[t]) = w(t);
    }
  }
  return out;
}

ComplexMatrix apply_superoperator(const ComplexMatrix& m, std::span<const int> dims,
                                  const ComplexMatrix& superop, std::span<const int> targets) {
  check_dims(m.rows(), dims);
  const auto dt = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(superop.rows()))));
  if (superop.rows() != dt * dt || superop.cols() != dt * dt) {
    throw InvalidArgument("superoperator must act on square blocks");
  }
  check_targets(dims, targets, dt);
  const auto n = static_cast<int>(dims.size());
  const auto toff = offsets(dims, targets);
  const auto roff = offsets(dims, complement(n, targets));
  ComplexMatrix out(m.rows(), m.cols());
  Eigen::VectorXcd v(dt * dt);
  for (Eigen::Index ri : roff) {
    for (Eigen::Index rj : roff) {
      for (Eigen::Index a = 0; a < dt; ++a) {
        for (Eigen::Index b = 0; b < dt; ++b) v(a * dt + b) = m(ri + toff[a], rj + toff[b]);
      }
      const Eigen::VectorXcd w = superop * v;
      for (Eigen::Index a = 0; a < dt; ++a) {
        for (Eigen::Index b = 0; b < dt; ++b) out(ri + toff[a], rj + toff[b]) = w(a * dt + b);
      }
    }
  }
  return out;
}

ComplexMatrix superoperator(const KrausSet& channel) {
  // vec(K B K^dag) = (K (x) conj(K)) vec(B) for row-major vec.
  const Eigen::Index d = channel.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : channel.ops()) s += kron(k, k.conjugate());
  return s;
}

DensityMatrix apply_on_subsystems(const DensityMatrix& rho, const ComplexMatrix& unitary,
                                  std::span<const int> targets) {
  if (max_abs(unitary.adjoint() * unitary - identity(unitary.rows())) > kStateTolerance) {
    throw InvalidArgument("operator is not unitary");
  }
  return DensityMatrix::unchecked(
      sandwich_on_subsystems(rho.matrix(), rho.dims(), unitary, unitary, targets), rho.dims());
}

DensityMatrix apply_on_subsystems(const DensityMatrix& rho, const KrausSet& channel,
                                  std::span<const int> targets) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : channel.ops()) {
    out += sandwich_on_subsystems(rho.matrix(), rho.dims(), k, k, targets);
  }
  return DensityMatrix::unchecked(std::move(out), rho.dims());
}

}  // namespace colltherm

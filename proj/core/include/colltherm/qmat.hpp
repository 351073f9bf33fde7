#pragma once

// Dense complex linear algebra on small tensor-product Hilbert spaces.
//
// Conventions used throughout the library:
//   * subsystem 0 is the leftmost tensor factor; a joint index is the
//     row-major mixed-radix number (i_0, i_1, ..., i_{n-1});
//   * entropies and mutual informations are in nats.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "colltherm/errors.hpp"

namespace colltherm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Largest Hilbert-space dimension any operation will allocate (2^13).
inline constexpr Eigen::Index kMaxDimension = Eigen::Index{1} << 13;

/// Tolerance for the Hermiticity, trace and positivity invariants.
inline constexpr double kStateTolerance = 1e-10;

struct InvariantReport {
  double hermiticity_error = 0.0;  ///< max |rho_ij - conj(rho_ji)|
  double trace_error = 0.0;        ///< |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok(double tol = kStateTolerance) const {
    return hermiticity_error <= tol && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

/// Hermitian, unit-trace, positive-semidefinite matrix on a tensor product of
/// subsystems whose dimensions multiply to the matrix dimension.
class DensityMatrix {
 public:
  /// Validates every invariant; throws InvalidArgument on violation.
  DensityMatrix(ComplexMatrix mat, std::vector<int> subsystem_dims);

  /// Single subsystem of dimension mat.rows().
  explicit DensityMatrix(ComplexMatrix mat);

  /// Skips the eigenvalue-based positivity check. For outputs of maps that
  /// preserve positivity (unitary conjugation, CPTP maps, partial traces).
  /// Shape and subsystem consistency are still checked.
  static DensityMatrix unchecked(ComplexMatrix mat, std::vector<int> subsystem_dims);

  /// Pure-state projector |psi><psi| (psi is normalized internally).
  static DensityMatrix pure(const Eigen::VectorXcd& psi, std::vector<int> subsystem_dims);

  const ComplexMatrix& matrix() const { return mat_; }
  const std::vector<int>& dims() const { return dims_; }
  Eigen::Index dim() const { return mat_.rows(); }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }

  InvariantReport check() const;

 private:
  struct NoCheck {};
  DensityMatrix(NoCheck, ComplexMatrix mat, std::vector<int> subsystem_dims);

  ComplexMatrix mat_;
  std::vector<int> dims_;
};

/// Completely positive trace-preserving map given by its Kraus operators.
class KrausSet {
 public:
  /// Throws InvalidArgument unless all operators are square, of equal
  /// dimension, and sum_k K^dag K = I within kStateTolerance.
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  Eigen::Index dim() const { return ops_.front().rows(); }

  /// max |sum_k K^dag K - I|
  double completeness_error() const;

 private:
  std::vector<ComplexMatrix> ops_;
};

struct EigenDecomposition {
  RealVector values;      ///< ascending
  ComplexMatrix vectors;  ///< orthonormal eigenvectors as columns
};

// -- basic matrices -----------------------------------------------------------

ComplexMatrix identity(Eigen::Index dim);
/// Pauli matrices in the {|g>, |e>} basis: sigma_z |e> = +|e>, sigma_minus |e> = |g>.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kStateTolerance);

// -- tensor products and reductions ------------------------------------------

/// Throws ResourceGuardError if the product dimension exceeds kMaxDimension.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

/// Keeps the listed subsystems (in their original order) and traces out the rest.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

// -- spectra -----------------------------------------------------------------

/// Throws InvalidArgument if `a` is not Hermitian within kStateTolerance.
EigenDecomposition herm_eig(const ComplexMatrix& a);

/// exp(-i h t), computed through herm_eig(h).
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t);

/// -sum lambda ln lambda, skipping eigenvalues below 1e-14.
double von_neumann_entropy(const DensityMatrix& rho);

/// Eigenvalues of a density matrix with [-kStateTolerance, 0) clipped to zero.
/// Anything more negative throws InvalidArgument.
EigenDecomposition clipped_spectrum(const DensityMatrix& rho);

// -- local operations --------------------------------------------------------

/// U rho U^dag with U acting on `targets` (ordered; targets[0] is the
/// leftmost factor of U's index).
DensityMatrix apply_on_subsystems(const DensityMatrix& rho, const ComplexMatrix& unitary,
                                  std::span<const int> targets);

/// sum_k K_k rho K_k^dag with the K_k acting on `targets`.
DensityMatrix apply_on_subsystems(const DensityMatrix& rho, const KrausSet& channel,
                                  std::span<const int> targets);

/// A m B^dag for a general (not necessarily positive) matrix m, with A and B
/// acting on `targets`. Building block for the operations above and for
/// derivative propagation.
ComplexMatrix sandwich_on_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                     const ComplexMatrix& left, const ComplexMatrix& right,
                                     std::span<const int> targets);

/// Applies a linear map on the target block of m. `superop` acts on the
/// row-major vectorization vec(B)[a*d + b] = B(a, b) of each d x d block.
ComplexMatrix apply_superoperator(const ComplexMatrix& m, std::span<const int> dims,
                                  const ComplexMatrix& superop, std::span<const int> targets);

/// Row-major vectorized superoperator of a Kraus set.
ComplexMatrix superoperator(const KrausSet& channel);

}  // namespace colltherm

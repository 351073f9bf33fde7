#include <doctest.h>

#include <array>
#include <cmath>

#include "colltherm/qmat.hpp"
#include "oracles.hpp"

using namespace colltherm;

namespace {
DensityMatrix random_state(oracle::Rng& rng, std::vector<int> dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return DensityMatrix(rng.density(d), std::move(dims));
}
}  // namespace

TEST_SUITE("qmat") {
  TEST_CASE("kron agrees with explicit index arithmetic") {
    oracle::Rng rng(1);
    const ComplexMatrix a = rng.ginibre(2);
    const ComplexMatrix b = rng.ginibre(4);
    CHECK(max_abs(kron(a, b) - oracle::kron(a, b)) < 1e-14);
  }

  TEST_CASE("kron refuses dimensions beyond the guard") {
    const ComplexMatrix big = identity(1 << 7);
    CHECK_THROWS_AS(kron(big, big), ResourceGuardError);
  }

  TEST_CASE("partial trace of a product returns the factors") {
    oracle::Rng rng(2);
    const DensityMatrix a = random_state(rng, {2});
    const DensityMatrix b = random_state(rng, {2});
    const DensityMatrix ab = kron(a, b);
    CHECK(max_abs(partial_trace(ab, std::array{0}).matrix() - a.matrix()) < 1e-14);
    CHECK(max_abs(partial_trace(ab, std::array{1}).matrix() - b.matrix()) < 1e-14);
  }

  TEST_CASE("partial trace matches the reference on three qubits") {
    oracle::Rng rng(3);
    const DensityMatrix rho = random_state(rng, {2, 2, 2});
    for (int q = 0; q < 3; ++q) {
      std::vector<int> keep;
      for (int i = 0; i < 3; ++i)
        if (i != q) keep.push_back(i);
      CHECK(max_abs(partial_trace(rho, keep).matrix() - oracle::trace_out(rho.matrix(), q, 3)) < 1e-14);
    }
  }

  TEST_CASE("two-qubit operation on non-adjacent, reversed targets") {
    oracle::Rng rng(4);
    const DensityMatrix rho = random_state(rng, {2, 2, 2});
    const ComplexMatrix u = rng.unitary(4);
    const DensityMatrix out = apply_on_subsystems(rho, u, std::array{2, 0});
    const ComplexMatrix full = oracle::embed2(u, 2, 0, 3);
    CHECK(max_abs(out.matrix() - full * rho.matrix() * full.adjoint()) < 1e-13);
  }

  TEST_CASE("non-unitary operators are rejected") {
    const DensityMatrix rho(0.5 * identity(2));
    CHECK_THROWS_AS(apply_on_subsystems(rho, 2.0 * identity(2), std::array{0}), InvalidArgument);
  }

  TEST_CASE("superoperator form reproduces the Kraus action") {
    oracle::Rng rng(5);
    const double p = 0.3;
    ComplexMatrix k0 = identity(2) * std::sqrt(1 - p);
    ComplexMatrix k1 = pauli_x() * std::sqrt(p);
    const KrausSet ch({k0, k1});
    const DensityMatrix rho = random_state(rng, {2, 2});
    const ComplexMatrix via_kraus = apply_on_subsystems(rho, ch, std::array{1}).matrix();
    const std::vector<int> dims{2, 2};
    const ComplexMatrix via_super = apply_superoperator(rho.matrix(), dims, superoperator(ch), std::array{1});
    CHECK(max_abs(via_kraus - via_super) < 1e-14);
  }

  TEST_CASE("herm_eig reconstructs and rejects non-Hermitian input") {
    oracle::Rng rng(6);
    const ComplexMatrix h = rng.hermitian(4);
    const EigenDecomposition e = herm_eig(h);
    const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(max_abs(back - h) < 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(e.values(i) >= e.values(i - 1));
    CHECK_THROWS_AS(herm_eig(rng.ginibre(3)), InvalidArgument);
  }

  TEST_CASE("unitary from a Hamiltonian matches the series exponential") {
    oracle::Rng rng(7);
    const ComplexMatrix h = rng.hermitian(4);
    const ComplexMatrix expected = oracle::expm(Complex(0, -0.7) * h);
    CHECK(max_abs(unitary_from_hamiltonian(h, 0.7) - expected) < 1e-12);
  }

  TEST_CASE("entropy of pure and maximally mixed states") {
    oracle::Rng rng(8);
    CHECK(von_neumann_entropy(DensityMatrix(rng.pure(4), {2, 2})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(DensityMatrix(0.25 * identity(4), {2, 2})) == doctest::Approx(std::log(4.0)));
  }

  TEST_CASE("density matrix validation") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    CHECK_NOTHROW(DensityMatrix{m});
    ComplexMatrix not_herm = m;
    not_herm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(2.0 * m), InvalidArgument);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidArgument);
    CHECK_THROWS_AS(DensityMatrix(0.25 * identity(4), {2, 3}), InvalidArgument);
  }

  TEST_CASE("clipped spectrum zeroes tiny negative eigenvalues") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0 + 1e-12;
    m(1, 1) = -1e-12;
    const auto rho = DensityMatrix::unchecked(m, {2});
    CHECK(clipped_spectrum(rho).values(0) == 0.0);
  }

  TEST_CASE("incomplete Kraus sets are rejected") {
    CHECK_THROWS_AS(KrausSet({0.9 * identity(2)}), InvalidArgument);
  }
}

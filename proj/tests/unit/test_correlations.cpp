#include <doctest.h>

#include <cmath>
#include <numbers>

#include "colltherm/correlations.hpp"
#include "colltherm/figures.hpp"
#include "oracles.hpp"

using namespace colltherm;

namespace {
BipartiteState bell() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return BipartiteState(DensityMatrix(m, {2, 2}));
}
}  // namespace

TEST_SUITE("correlations") {
  TEST_CASE("reference values") {
    oracle::Rng rng(41);
    const BipartiteState product(kron(DensityMatrix(rng.density(2)), DensityMatrix(rng.density(2))));
    CHECK(std::abs(mutual_information(product)) < 1e-12);
    CHECK(discord(product, MeasuredSide::A) < 1e-10);

    CHECK(mutual_information(bell()) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(discord(bell(), MeasuredSide::A) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(discord(bell(), MeasuredSide::B) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(oracle::discord_bruteforce(bell().rho().matrix(), 61, 120) == doctest::Approx(std::log(2.0)).epsilon(1e-8));

    ComplexMatrix cc = ComplexMatrix::Zero(4, 4);
    cc(0, 0) = 0.1;
    cc(1, 1) = 0.2;
    cc(2, 2) = 0.3;
    cc(3, 3) = 0.4;
    const BipartiteState classical{DensityMatrix(cc, {2, 2})};
    CHECK(discord(classical, MeasuredSide::A) < 1e-10);
    CHECK(discord(classical, MeasuredSide::B) < 1e-10);
  }

  TEST_CASE("discord agrees with a brute-force measurement scan") {
    oracle::Rng rng(42);
    for (int trial = 0; trial < 4; ++trial) {
      const ComplexMatrix rho = rng.density(4);
      const double ref = oracle::discord_bruteforce(rho, 91, 180);
      const double d = discord(BipartiteState(DensityMatrix(rho, {2, 2})), MeasuredSide::A);
      CHECK(d <= ref + 1e-10);
      CHECK(d == doctest::Approx(ref).epsilon(1e-3));
    }
  }

  TEST_CASE("pair_state ordering") {
    oracle::Rng rng(43);
    const DensityMatrix a(rng.density(2));
    const DensityMatrix b(rng.density(2));
    const DensityMatrix c(rng.density(2));
    const DensityMatrix abc = kron(kron(a, b), c);
    CHECK(max_abs(pair_state(abc, 2, 0).rho().matrix() - kron(c, a).matrix()) < 1e-14);
    CHECK(max_abs(pair_state(abc, 0, 1).rho().matrix() - kron(a, b).matrix()) < 1e-14);
    CHECK_THROWS_AS(pair_state(abc, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(BipartiteState{abc}, InvalidArgument);
  }

  TEST_CASE("strong relaxation removes ancilla correlations") {
    const double rate = 50.0;
    const EnvironmentParams env{1.0, rate / 3.0};
    const ChainResult r = run_chain(env, standard_zz(), 2, std::vector<double>{1.0});
    CHECK(mutual_information(pair_state(r.joint_ancillas, 0, 1)) < 1e-8);
  }
}

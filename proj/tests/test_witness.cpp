#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorder/instances.hpp"
#include "jorder/order.hpp"
#include "jorder/witness.hpp"

#include <cmath>

using namespace jorder;

namespace {

const double kSqrt2 = std::sqrt(2.0);

GeneralMatrix canonical_unitary() {
  Matrix u(2, 2);
  u << 4.0 * kSqrt2 / 6.0, 2.0 / 6.0, -2.0 / 6.0, 4.0 * kSqrt2 / 6.0;
  return u;
}

}  // namespace

TEST_CASE("affine projector lands on the constraint set, minimally") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 3);
    const HermitianMatrix b = random_psd(n, seed, 0.2, 2.0);
    const HermitianMatrix a = random_psd(n, seed + 50, 0.1, 1.5);
    const detail::AffineEquationProjector projector(
        b, HermitianMatrix::symmetrized(2.0 * a.matrix()));

    const GeneralMatrix c0 = random_gaussian(n, seed + 100);
    const GeneralMatrix p0 = projector.project(c0);
    CHECK((p0 * b.matrix() + b.matrix() * p0.adjoint() - 2.0 * a.matrix())
              .norm() <= 1e-9);
    // projection of a feasible point is itself
    CHECK((projector.project(p0) - p0).norm() <= 1e-9);

    // Frobenius optimality: the correction is orthogonal to feasible
    // differences.
    const GeneralMatrix p1 = projector.project(random_gaussian(n, seed + 200));
    const Complex inner = ((c0 - p0).adjoint() * (p1 - p0)).trace();
    CHECK(std::abs(inner.real()) <= 1e-8);
  }
}

TEST_CASE("norm ball projection clips singular values") {
  const GeneralMatrix g = 3.0 * random_gaussian(3, 9);
  const GeneralMatrix clipped = detail::project_norm_ball(g);
  CHECK(operator_norm(clipped) <= 1.0 + 1e-12);
  const GeneralMatrix small = 0.1 * random_gaussian(3, 10);
  CHECK((detail::project_norm_ball(small) - small).norm() <= 1e-14);
}

TEST_CASE("find_contraction: A = B accepts the identity at iteration 0") {
  const HermitianMatrix m = random_psd(3, 3, 0.3, 2.0);
  const ContractionWitness w = find_contraction(m, m);
  CHECK(w.accepted);
  CHECK(w.iterations == 0);
  CHECK((w.c - Matrix::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("find_contraction on the canonical feasible pair") {
  const CanonicalTriple triple = canonical_triple();
  const ContractionWitness w = find_contraction(triple.a, triple.b);
  CHECK(w.accepted);
  CHECK(w.equation_residual <= 1e-7 * std::max(1.0, triple.a.matrix().norm()));
  CHECK(w.norm_excess <= 1e-8);
}

TEST_CASE("find_contraction reports non-convergence on the failing pair") {
  const CanonicalTriple triple = canonical_triple();
  const ContractionWitness w = find_contraction(triple.a, triple.c, 800);
  CHECK_FALSE(w.accepted);
  CHECK(w.equation_residual > 1e-4);
}

TEST_CASE("verify_witness") {
  const HermitianMatrix m = random_psd(3, 11, 0.2, 1.5);

  SUBCASE("identity on equal pair") {
    const ContractionWitness w =
        verify_witness(Matrix::Identity(3, 3), m, m);
    CHECK(w.accepted);
    CHECK(w.equation_residual <= 1e-13);
    CHECK(w.norm_excess == 0.0);
    CHECK(w.chain_slack >= -1e-8);
  }

  SUBCASE("canonical exact unitary witness") {
    const CanonicalTriple triple = canonical_triple();
    const ContractionWitness w =
        verify_witness(canonical_unitary(), triple.a, triple.b);
    CHECK(w.accepted);
    CHECK(w.equation_residual <= 1e-10);
    CHECK(w.chain_slack >= -1e-8);
  }

  SUBCASE("doubled identity is rejected with norm excess 1") {
    const ContractionWitness w =
        verify_witness(2.0 * Matrix::Identity(3, 3), m, m);
    CHECK_FALSE(w.accepted);
    CHECK(w.norm_excess == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("witness completeness on planted feasible pairs") {
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const FeasiblePair pair = feasible_pair(3, seed);
    CHECK(verify_witness(pair.c0, pair.a, pair.b).accepted);
    const ContractionWitness w = find_contraction(pair.a, pair.b);
    if (w.accepted) ++accepted;
  }
  CHECK(accepted >= 24);
}

TEST_CASE("witness soundness: accepted witness forbids a Fails verdict") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const FeasiblePair pair = feasible_pair(3, seed + 500);
    const ContractionWitness w = find_contraction(pair.a, pair.b);
    if (!w.accepted) continue;
    const Verdict v = check_order_squared(pair.a, pair.b);
    CHECK(v.outcome != Outcome::Fails);
  }
}

TEST_CASE("solve_hermitian_quadratic") {
  SUBCASE("diagonal equal pair solves at K = 0") {
    RealVector d(3);
    d << 0.5, 1.0, 2.0;
    const HermitianMatrix m = HermitianMatrix::from_diagonal(d);
    const FactorizationData f =
        solve_hermitian_quadratic(m, m, Matrix::Zero(3, 3));
    CHECK(f.converged);
    CHECK(f.iterations == 0);
    CHECK(f.modulus_residual <= 1e-12);
  }

  SUBCASE("canonical pair from a perturbed exact start") {
    const CanonicalTriple triple = canonical_triple();
    Matrix k_exact(2, 2);
    k_exact << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
    const Matrix noise =
        1e-2 * random_hermitian_direction(2, 77).matrix();
    const FactorizationData f = solve_hermitian_quadratic(
        triple.a, triple.b, k_exact + noise);
    CHECK(f.converged);
    CHECK(f.modulus_residual <= 1e-8);
    CHECK(f.hermitian_part_residual <= 1e-12);
    // Z recovers a square root of B^2 with Re Z = A
    CHECK((f.z.adjoint() * f.z - square(triple.b).matrix()).norm() <= 1e-8);
  }

  SUBCASE("planted random instances from a perturbed exact start") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ZPair zp = z_pair(3, seed);
      const Matrix noise =
          1e-2 * random_hermitian_direction(3, seed + 900).matrix();
      const FactorizationData f =
          solve_hermitian_quadratic(zp.a, zp.b, zp.k + noise, 50, 1e-12);
      CHECK(f.converged);
      CHECK(f.modulus_residual <= 1e-8);
    }
  }
}

TEST_CASE("factorization consistency: polar factor of Z is a witness") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ZPair zp = z_pair(3, seed + 40);
    if (!zp.a_psd) continue;
    const FactorizationData f = solve_hermitian_quadratic(zp.a, zp.b, zp.k);
    REQUIRE(f.converged);
    const PolarDecomposition pd = jorder::polar(f.z);
    const ContractionWitness w = verify_witness(pd.unitary, zp.a, zp.b);
    CHECK(w.accepted);
  }
}

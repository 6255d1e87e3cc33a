#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorder/instances.hpp"
#include "jorder/order.hpp"
#include "jorder/witness.hpp"

#include <cmath>

using namespace jorder;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("canonical triple internal identities") {
  const CanonicalTriple t = canonical_triple();

  // B^2 = X*X = [[2, sqrt2],[sqrt2, 3]]
  Matrix b2_expected(2, 2);
  b2_expected << 2.0, kSqrt2, kSqrt2, 3.0;
  CHECK((square(t.b).matrix() - b2_expected).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((t.x.adjoint() * t.x - b2_expected).cwiseAbs().maxCoeff() <= 1e-12);

  // (C^2)_11 = 16/9
  CHECK(square(t.c).matrix()(0, 0).real() ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-13));

  // Re Y = B, Re X = A
  CHECK((0.5 * (t.y + t.y.adjoint()) - t.b.matrix()).cwiseAbs().maxCoeff() <=
        1e-12);
  CHECK((0.5 * (t.x + t.x.adjoint()) - t.a.matrix()).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("non-transitivity of the squared relation on the triple") {
  const CanonicalTriple t = canonical_triple();
  CHECK(check_order_squared(t.a, t.b).outcome != Outcome::Fails);
  CHECK(check_order_squared(t.b, t.c).outcome != Outcome::Fails);
  CHECK(check_order_squared(t.a, t.c).outcome == Outcome::Fails);
}

TEST_CASE("perturbation margin") {
  CHECK(perturbation_margin(0.0) == 0.0);
  CHECK(perturbation_margin(1.0) ==
        doctest::Approx(2.0 * kSqrt2 - 8.0 / 3.0).epsilon(1e-15));
  CHECK(perturbation_margin(1.0) == doctest::Approx(0.161760).epsilon(1e-5));
  for (const double eps : {0.25, 0.7, 1.3}) {
    CHECK(perturbation_margin(2.0 * eps) ==
          doctest::Approx(2.0 * perturbation_margin(eps)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(perturbation_margin(-0.1), DomainError);
}

TEST_CASE("random_psd") {
  const HermitianMatrix one = random_psd(3, 5, 1.0, 1.0);
  CHECK((one.matrix() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const HermitianMatrix first = random_psd(4, 7, 0.5, 2.0);
  const HermitianMatrix second = random_psd(4, 7, 0.5, 2.0);
  CHECK((first.matrix() - second.matrix()).norm() == 0.0);

  CHECK(min_eigenvalue(first) >= 0.5 - 1e-10);
  CHECK(max_eigenvalue(first) <= 2.0 + 1e-10);

  CHECK_THROWS_AS(random_psd(3, 1, 2.0, 1.0), InvalidIntervalError);
  CHECK_THROWS_AS(random_psd(3, 1, -0.5, 1.0), InvalidIntervalError);
}

TEST_CASE("random_contraction") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GeneralMatrix c = random_contraction(3, seed);
    const double norm = operator_norm(c);
    CHECK(norm <= 1.0 + 1e-12);
    CHECK(norm > 0.0);
  }
  const GeneralMatrix a = random_contraction(4, 11);
  const GeneralMatrix b = random_contraction(4, 11);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("random_unitary is unitary and Haar-deterministic") {
  const GeneralMatrix u = random_unitary(5, 3);
  CHECK((u.adjoint() * u - Matrix::Identity(5, 5)).norm() <= 1e-12);
  CHECK((u - random_unitary(5, 3)).norm() == 0.0);
}

TEST_CASE("feasible_pair plants an exact witness") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FeasiblePair pair = feasible_pair(3, seed);
    CHECK(min_eigenvalue(pair.a) >= -1e-12);
    CHECK(verify_witness(pair.c0, pair.a, pair.b).accepted);
  }
  // identity contraction would give A = B exactly
  const HermitianMatrix b = random_psd(3, 77, 0.2, 2.0);
  const Matrix a_manual =
      0.5 * (Matrix::Identity(3, 3) * b.matrix() +
             b.matrix() * Matrix::Identity(3, 3));
  CHECK((a_manual - b.matrix()).norm() <= 1e-14);
}

TEST_CASE("feasible_pair never yields a Fails verdict") {
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    const FeasiblePair pair = feasible_pair(3, seed);
    CHECK(check_order_squared(pair.a, pair.b).outcome != Outcome::Fails);
  }
}

TEST_CASE("z_pair plants an exact factorization solution") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ZPair zp = z_pair(3, seed);
    // K = Im Z solves K^2 + i(AK - KA) = B^2 - A^2 by construction
    const Matrix f = zp.a.matrix() * zp.a.matrix() + zp.k * zp.k +
                     Complex(0, 1) * (zp.a.matrix() * zp.k -
                                      zp.k * zp.a.matrix()) -
                     square(zp.b).matrix();
    CHECK(f.norm() <= 1e-12 * std::max(1.0, square(zp.b).matrix().norm()));
    CHECK((zp.a.matrix() + Complex(0, 1) * zp.k - zp.z).norm() <= 1e-13);
  }

  // Hermitian Z has K = 0: the formula (Z - Z*)/2i vanishes
  const HermitianMatrix h = random_psd(3, 5, 0.0, 1.0);
  const Matrix k = (h.matrix() - h.matrix().adjoint()) / Complex(0.0, 2.0);
  CHECK(k.norm() <= 1e-15);

  // canonical X gives K = [[0, -i/2],[i/2, 0]]
  const CanonicalTriple t = canonical_triple();
  const Matrix kx = (t.x - t.x.adjoint()) / Complex(0.0, 2.0);
  Matrix k_expected(2, 2);
  k_expected << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
  CHECK((kx - k_expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("generator inequality: Re X <= |X|^2/(2t) + t/2") {
  std::uint64_t seed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 4);
    const GeneralMatrix x = random_gaussian(n, seed++);
    const Matrix re_x = 0.5 * (x + x.adjoint());
    const Matrix mod2 = x.adjoint() * x;
    for (int k = 1; k <= 10; ++k) {
      const double t = 0.3 * k;
      const HermitianMatrix gap = HermitianMatrix::symmetrized(
          mod2 / (2.0 * t) + 0.5 * t * Matrix::Identity(n, n) - re_x);
      CHECK(min_eigenvalue(gap) >= -1e-9);
    }
  }
}

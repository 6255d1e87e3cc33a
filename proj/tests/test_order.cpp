#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorder/instances.hpp"
#include "jorder/order.hpp"

#include <cmath>

using namespace jorder;

namespace {

const double kSqrt2 = std::sqrt(2.0);

HermitianMatrix scalar1(double v) {
  RealVector d(1);
  d << v;
  return HermitianMatrix::from_diagonal(d);
}

// Independent audit of a Fails certificate: re-evaluate the quadratic form
// from scratch and demand strict negativity past the exactness band.
void audit_fails(const Verdict& v, const HermitianMatrix& a,
                 const HermitianMatrix& b, bool squared) {
  REQUIRE(v.outcome == Outcome::Fails);
  REQUIRE(v.fails.has_value());
  CHECK(std::abs(v.fails->xi.norm() - 1.0) <= 1e-12);
  const double value =
      quadratic_form_value(a, b, squared, v.fails->t, v.fails->xi);
  CHECK(value < -1e-12);
  CHECK(value == doctest::Approx(v.fails->value).epsilon(1e-9));
}

}  // namespace

TEST_CASE("min_halfline") {
  const auto m = min_halfline(16.0 / 9.0);
  CHECK(std::abs(m.value - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(m.t_star - 4.0 / 3.0) <= 1e-12);
  CHECK_FALSE(m.open_infimum);

  for (const double eps : {0.1, 0.5, 1.0}) {
    const double q = (9.0 * eps * eps + 24.0 * eps + 18.0) / 9.0;
    CHECK(min_halfline(q).value ==
          doctest::Approx(std::sqrt(9.0 * eps * eps + 24.0 * eps + 18.0) / 3.0)
              .epsilon(1e-14));
  }

  CHECK(min_halfline(1.0).value == doctest::Approx(1.0));
  CHECK(min_halfline(0.0).open_infimum);
  CHECK(min_halfline(0.0).value == 0.0);
  CHECK_THROWS_AS(min_halfline(-1e-3), DomainError);
}

TEST_CASE("reflexive and Loewner-ordered pairs hold") {
  const HermitianMatrix id = HermitianMatrix::identity(3);
  const Verdict v = check_order(id, id);
  CHECK(v.outcome == Outcome::Holds);
  REQUIRE(v.holds.has_value());
  CHECK(v.holds->method == HoldsMethod::LoewnerFloor);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HermitianMatrix m = random_psd(3, seed, 0.1, 2.0);
    CHECK(check_order(m, m).outcome == Outcome::Holds);
    CHECK(check_order_squared(m, m).outcome == Outcome::Holds);
  }
}

TEST_CASE("canonical pairs: squared relation holds for (A,B) and (B,C)") {
  const CanonicalTriple triple = canonical_triple();

  const Verdict ab = check_order_squared(triple.a, triple.b);
  CHECK(ab.outcome == Outcome::Holds);
  // boundary instance: certified by factorization, not by a strict margin
  REQUIRE(ab.holds.has_value());
  CHECK(ab.holds->method == HoldsMethod::Factorization);
  CHECK(ab.holds->floor >= -1e-11);

  const Verdict bc = check_order_squared(triple.b, triple.c);
  CHECK(bc.outcome == Outcome::Holds);

  // same relations expressed through check_order on the squares
  const Verdict ab2 =
      check_order(square(triple.a), square(triple.b));
  CHECK(ab2.outcome == Outcome::Holds);
}

TEST_CASE("canonical pair (A,C): squared relation fails") {
  const CanonicalTriple triple = canonical_triple();
  const Verdict ac = check_order_squared(triple.a, triple.c);
  audit_fails(ac, triple.a, triple.c, true);

  // the canonical violation point: t = 4/3, xi = e1
  Vector e1(2);
  e1 << 1.0, 0.0;
  const double canonical =
      quadratic_form_value(triple.a, triple.c, true, 4.0 / 3.0, e1);
  CHECK(canonical ==
        doctest::Approx(32.0 / 9.0 - (8.0 / 3.0) * kSqrt2).epsilon(1e-12));
  CHECK(canonical == doctest::Approx(-0.21568061).epsilon(1e-6));

  // and through check_order on the squares
  const Verdict ac2 = check_order(square(triple.a), square(triple.c));
  audit_fails(ac2, square(triple.a), square(triple.c), false);
}

TEST_CASE("scalar pair fails: 2 > 1") {
  const Verdict v = check_order(scalar1(4.0), scalar1(1.0));
  audit_fails(v, scalar1(4.0), scalar1(1.0), false);
  CHECK(v.fails->value == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("perturbed canonical pair fails for every eps > 0") {
  const CanonicalTriple triple = canonical_triple();
  const Matrix id = Matrix::Identity(2, 2);
  for (const double eps : {0.1, 0.5, 1.0}) {
    const HermitianMatrix a_eps =
        HermitianMatrix::symmetrized(triple.a.matrix() + eps * id);
    const HermitianMatrix b_eps =
        HermitianMatrix::symmetrized(triple.b.matrix() + eps * id);
    const Verdict v = check_order_squared(a_eps, b_eps);
    audit_fails(v, a_eps, b_eps, true);
  }
}

TEST_CASE("strictly interior pair is certified by the grid margin") {
  const CanonicalTriple triple = canonical_triple();
  const HermitianMatrix b_shift = HermitianMatrix::symmetrized(
      triple.b.matrix() + 0.05 * Matrix::Identity(2, 2));
  const Verdict v = check_order_squared(triple.a, b_shift);
  REQUIRE(v.outcome == Outcome::Holds);
  REQUIRE(v.holds.has_value());
  CHECK(v.holds->method == HoldsMethod::GridMargin);
  CHECK(v.holds->min_grid_value >=
        0.5 * v.holds->lipschitz * v.holds->grid_step);
  CHECK(v.holds->min_grid_value > 0.0);
}

TEST_CASE("certified outcomes around the exactness band") {
  SUBCASE("a pair failing beyond the band is a certified Fails") {
    const Verdict v = check_order(scalar1(1.0), scalar1(1.0 - 5e-12));
    audit_fails(v, scalar1(1.0), scalar1(1.0 - 5e-12), false);
  }

  SUBCASE("a pair inside the band holds within tolerance") {
    const Verdict v = check_order(scalar1(1.0), scalar1(1.0 - 5e-13));
    CHECK(v.outcome == Outcome::Holds);
  }

  SUBCASE("a dip below grid resolution stays undecided") {
    // Shift the boundary pair (A, B) down by 5e-12: the pencil dips to
    // about -1.3e-11 in a window of width ~2e-3 around sqrt(2). A 256-point
    // grid straddles the dip (nearest values are positive), refinement is
    // disabled, and the infeasibility exceeds the factorization band.
    const CanonicalTriple triple = canonical_triple();
    const HermitianMatrix b_down = HermitianMatrix::symmetrized(
        triple.b.matrix() - 5e-12 * Matrix::Identity(2, 2));
    DecisionConfig cfg;
    cfg.initial_grid_points = 256;
    cfg.max_refinements = 0;
    const Verdict v = check_order_squared(triple.a, b_down, cfg);
    REQUIRE(v.outcome == Outcome::Undecided);
    REQUIRE(v.undecided.has_value());
    CHECK(v.undecided->final_grid_step > 0.0);
    CHECK(v.undecided->smallest_margin < 0.0);
  }
}

TEST_CASE("input validation") {
  RealVector d(2);
  d << 1.0, -1e-3;
  const HermitianMatrix not_psd = HermitianMatrix::from_diagonal(d);
  CHECK_THROWS_AS(check_order(not_psd, HermitianMatrix::identity(2)),
                  NotPositiveSemidefiniteError);
  CHECK_THROWS_AS(check_order(HermitianMatrix::identity(2), not_psd),
                  NotPositiveSemidefiniteError);

  DecisionConfig bad;
  bad.initial_grid_points = 2;
  CHECK_THROWS_AS(check_order(HermitianMatrix::identity(2),
                              HermitianMatrix::identity(2), bad),
                  InvalidConfigError);
}

TEST_CASE("brute force oracle") {
  const CanonicalTriple triple = canonical_triple();
  const Verdict ac =
      brute_force_order(square(triple.a), square(triple.c), 10000, 42);
  audit_fails(ac, square(triple.a), square(triple.c), false);

  const HermitianMatrix id = HermitianMatrix::identity(3);
  CHECK(brute_force_order(id, id, 10000, 1).outcome == Outcome::Undecided);

  // a single sample suffices because eigenvectors are always probed
  const Verdict scalar = brute_force_order(scalar1(4.0), scalar1(1.0), 1, 7);
  CHECK(scalar.outcome == Outcome::Fails);
}

TEST_CASE("Jensen monotonicity: Loewner-ordered pairs never fail") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 4);
    const HermitianMatrix a = random_psd(n, seed, 0.0, 2.0);
    const HermitianMatrix w = random_psd(n, seed + 4000, 0.0, 1.0);
    const HermitianMatrix b =
        HermitianMatrix::symmetrized(a.matrix() + w.matrix());
    const Verdict v = check_order(a, b);
    CHECK(v.outcome != Outcome::Fails);

    // spectral floor transfer on every Holds verdict
    if (v.outcome == Outcome::Holds) {
      CHECK(min_eigenvalue(b) >= min_eigenvalue(a) - 1e-8);
    }
  }
}

TEST_CASE("oracle agreement on random pairs") {
  int brute_fails = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 3);
    const HermitianMatrix a = random_psd(n, seed * 2 + 1, 0.0, 2.0);
    const HermitianMatrix b = random_psd(n, seed * 2 + 2, 0.0, 2.0);
    const Verdict brute = brute_force_order(a, b, 100000, seed);
    const Verdict certified = check_order(a, b);
    if (brute.outcome == Outcome::Fails) {
      ++brute_fails;
      CHECK(certified.outcome == Outcome::Fails);
    }
    // the reverse combination Fails/Holds must never occur
    if (certified.outcome == Outcome::Holds) {
      CHECK(brute.outcome != Outcome::Fails);
    }
  }
  CHECK(brute_fails > 10);  // the corpus genuinely exercises the Fails path
}

TEST_CASE("antisymmetry contrapositive on separated invertible pairs") {
  int both_hold = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const HermitianMatrix a = random_psd(3, seed * 2 + 100, 0.2, 2.0);
    HermitianMatrix b = random_psd(3, seed * 2 + 101, 0.2, 2.0);
    if (operator_norm(a.matrix() - b.matrix()) < 0.1) continue;
    const Verdict ab = check_order_squared(a, b);
    const Verdict ba = check_order_squared(b, a);
    if (ab.outcome == Outcome::Holds && ba.outcome == Outcome::Holds) {
      ++both_hold;
    }
    if (ab.outcome == Outcome::Holds) {
      CHECK(min_eigenvalue(b) >= min_eigenvalue(a) - 1e-8);
    }
  }
  CHECK(both_hold == 0);
}

TEST_CASE("decide_pencil evaluation counts are reported") {
  const CanonicalTriple triple = canonical_triple();
  const Verdict v = check_order_squared(triple.a, triple.c);
  CHECK(v.evaluations > 0);
}

TEST_CASE("singular inputs: the zero matrix as either side") {
  const HermitianMatrix zero = HermitianMatrix::zero(3);
  const HermitianMatrix m = random_psd(3, 17, 0.3, 1.5);

  CHECK(check_order(zero, zero).outcome == Outcome::Holds);
  CHECK(check_order(zero, m).outcome == Outcome::Holds);
  audit_fails(check_order(m, zero), m, zero, false);
  CHECK(check_order_squared(zero, m).outcome == Outcome::Holds);
}

TEST_CASE("verdicts agree with a dense independent scan of the pencil") {
  // Independent oracle: sample lambda_min(T - 2tS + t^2) densely in t and
  // compare against the certified verdict.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 3);
    const HermitianMatrix a = random_psd(n, seed * 5 + 3, 0.0, 1.5);
    const HermitianMatrix b = random_psd(n, seed * 5 + 4, 0.0, 1.5);

    const HermitianMatrix s = psd_sqrt(a);
    const double lo = min_eigenvalue(s);
    const double hi = max_eigenvalue(s);
    double dense_min = 1e300;
    const Matrix id = Matrix::Identity(n, n);
    for (int k = 0; k <= 2000; ++k) {
      const double t = lo + (hi - lo) * k / 2000.0;
      dense_min = std::min(
          dense_min, min_eigenvalue(HermitianMatrix::symmetrized(
                         b.matrix() - 2.0 * t * s.matrix() + t * t * id)));
    }

    const Verdict v = check_order(a, b);
    if (v.outcome == Outcome::Holds) {
      CHECK(dense_min >= -1e-9);
    } else if (v.outcome == Outcome::Fails) {
      CHECK(dense_min < 1e-9);  // a genuine violation exists nearby
      audit_fails(v, a, b, false);
    }
  }
}

TEST_CASE("refinement factor 2 is honored") {
  DecisionConfig cfg;
  cfg.refinement_factor = 2;
  cfg.initial_grid_points = 9;
  const CanonicalTriple triple = canonical_triple();
  const Verdict v = check_order_squared(triple.a, triple.c, cfg);
  audit_fails(v, triple.a, triple.c, true);
}

TEST_CASE("brute_force_order rejects a non-positive sample count") {
  const HermitianMatrix id = HermitianMatrix::identity(2);
  CHECK_THROWS_AS(brute_force_order(id, id, 0, 1), InvalidConfigError);
}

TEST_CASE("decisions at dimension 16") {
  const HermitianMatrix a = random_psd(16, 900, 0.1, 2.0);
  const HermitianMatrix w = random_psd(16, 901, 0.1, 1.0);
  const HermitianMatrix b =
      HermitianMatrix::symmetrized(a.matrix() + w.matrix());
  CHECK(check_order(a, b).outcome == Outcome::Holds);
  audit_fails(check_order(b, a), b, a, false);
}

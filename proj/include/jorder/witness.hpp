#pragma once

#include "jorder/linalg.hpp"
#include "jorder/types.hpp"

#include <limits>

namespace jorder {

/// Candidate contraction C for the equation C B + B C* = 2 A, with
/// diagnostics. Accepted iff equation_residual <= 1e-7 * max(1, ||A||_F)
/// and norm_excess <= 1e-8.
struct ContractionWitness {
  GeneralMatrix c;
  double equation_residual = std::numeric_limits<double>::infinity();
  double norm_excess = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool accepted = false;
  /// min over probed t of lambda_min(B^2 + t^2 I - 2 t A); filled by
  /// verify_witness, NaN otherwise.
  double chain_slack = std::numeric_limits<double>::quiet_NaN();
};

bool witness_accepted(double equation_residual, double norm_excess,
                      double a_frobenius);

/// Searches for a contraction witness by Dykstra alternating projections
/// between the operator-norm unit ball and the affine set
/// {C : C B + B C* = 2 A}. When the projections stall short of tolerance on
/// a feasible pair (touching intersections converge only sublinearly), a
/// factorization-based polish is attempted; any returned witness is verified
/// against the acceptance thresholds, so the polish cannot produce false
/// positives. Non-convergence carries the best residuals seen and suggests
/// (but does not prove) that the relation fails.
ContractionWitness find_contraction(const HermitianMatrix& a,
                                    const HermitianMatrix& b,
                                    int max_iter = 5000, double tol = 1e-7);

/// Recomputes witness diagnostics for a given C, plus the implied-chain
/// sanity check 2tA <= B^2 + t^2 at t in {lambda_min(A), lambda_max(A)}.
ContractionWitness verify_witness(const GeneralMatrix& c,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b);

/// Solution data for the Hermitian quadratic equation
/// (A + iK)*(A + iK) = B^2 with K Hermitian: Z = A + iK, so Re Z = A and
/// |Z| = B when the residuals vanish.
struct FactorizationData {
  GeneralMatrix z;
  double hermitian_part_residual = std::numeric_limits<double>::infinity();
  double modulus_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Newton iteration on F(K) = K^2 + i(AK - KA) - (B^2 - A^2), with the
/// Jacobian action H -> KH + HK + i(AH - HA) solved over the real parameters
/// of Hermitian matrices and Armijo backtracking on ||F||_F. May fail to
/// converge from a bad start even on feasible pairs; retry policy is the
/// caller's.
FactorizationData solve_hermitian_quadratic(const HermitianMatrix& a,
                                            const HermitianMatrix& b,
                                            const GeneralMatrix& k0,
                                            int max_iter = 50,
                                            double tol = 1e-9);

namespace detail {

/// Newton factorization of the pencil constant term: finds Z = S + iK with
/// Z*Z ~= T (K Hermitian). The residual T - Z*Z certifies
/// T - 2tS + t^2 I >= -||T - Z*Z|| for every real t.
FactorizationData factor_pencil(const HermitianMatrix& s,
                                const HermitianMatrix& t,
                                const GeneralMatrix& k0, int max_iter,
                                double tol);

/// factor_pencil from a deterministic set of starting points (zero, the
/// commuting-case guess, seeded random Hermitian directions).
FactorizationData factor_pencil_multistart(const HermitianMatrix& s,
                                           const HermitianMatrix& t,
                                           int max_iter, double tol);

/// Frobenius-orthogonal projector onto {C : C B + B C* = R} for fixed
/// Hermitian B, R. The real-linear constraint map is assembled once; its
/// pseudo-inverse uses an eigendecomposition of the normal matrix with
/// cutoff 1e-12 * lambda_max, so singular B is handled (projection is onto
/// the least-squares constraint set when the affine set is empty).
class AffineEquationProjector {
 public:
  AffineEquationProjector(const HermitianMatrix& b, const HermitianMatrix& rhs);

  GeneralMatrix project(const GeneralMatrix& c) const;

 private:
  Index n_;
  RealMatrix constraint_;        // n^2 x 2n^2
  RealMatrix normal_pinv_;       // (M M^T)^+
  RealVector rhs_;
};

/// Projection onto the operator-norm unit ball (singular values clipped at 1).
GeneralMatrix project_norm_ball(const GeneralMatrix& c);

}  // namespace detail

}  // namespace jorder

#pragma once

#include "jorder/linalg.hpp"
#include "jorder/types.hpp"

#include <cstdint>
#include <optional>

namespace jorder {

enum class Outcome { Holds, Fails, Undecided };

enum class HoldsMethod {
  /// lambda_min(T - S^2) >= band: Q(t) = (T - S^2) + (S - t)^2 is PSD for
  /// every t without any scan.
  LoewnerFloor,
  /// Every grid cell cleared the Lipschitz margin g(center) >= L * h / 2.
  GridMargin,
  /// A factor Z = S + iK with Z*Z ~= T was found, so
  /// Q(t) = (Z - t)*(Z - t) + (T - Z*Z) >= -||T - Z*Z|| for every t.
  Factorization,
};

struct HoldsCertificate {
  HoldsMethod method = HoldsMethod::GridMargin;
  double grid_step = 0.0;       // h of the cell attaining min_grid_value
  double lipschitz = 0.0;       // L = 4 ||S||
  double min_grid_value = 0.0;  // smallest cleared grid value of lambda_min Q
  double floor = 0.0;           // certified lower bound for floor methods
  GeneralMatrix factor;         // Z for HoldsMethod::Factorization
};

struct FailsCertificate {
  double t = 0.0;
  Vector xi;           // unit vector
  double value = 0.0;  // <(T - 2tS + t^2)xi, xi>, strictly negative
};

struct UndecidedDiagnostics {
  double smallest_margin = 0.0;  // most negative g(center) - L*h/2 seen
  double final_grid_step = 0.0;
};

struct Verdict {
  Outcome outcome = Outcome::Undecided;
  std::optional<HoldsCertificate> holds;
  std::optional<FailsCertificate> fails;
  std::optional<UndecidedDiagnostics> undecided;
  long evaluations = 0;
};

struct DecisionConfig {
  int initial_grid_points = 257;
  int refinement_factor = 4;
  int max_refinements = 6;
  /// Inputs are accepted as PSD when lambda_min >= -psd_slack.
  double psd_slack = 1e-9;

  void validate() const {
    if (initial_grid_points < 3)
      throw InvalidConfigError("DecisionConfig: initial_grid_points >= 3");
    if (refinement_factor < 2)
      throw InvalidConfigError("DecisionConfig: refinement_factor >= 2");
    if (max_refinements < 0)
      throw InvalidConfigError("DecisionConfig: max_refinements >= 0");
    if (psd_slack < 0)
      throw InvalidConfigError("DecisionConfig: psd_slack >= 0");
  }
};

/// Decides A <| B, i.e. <A^{1/2} xi, xi> <= <B xi, xi>^{1/2} for every unit
/// vector, by certifying Q(t) = B - 2 t S + t^2 I >= 0 for all t > 0 with
/// S = A^{1/2}. The scan is restricted to [lambda_min(S), lambda_max(S)]
/// (each fiber quadratic is convex with its minimizer inside). Holds comes
/// with one of three certificates (see HoldsMethod); Fails with a violating
/// (t, xi) that re-evaluates below -1e-12; otherwise Undecided.
Verdict check_order(const HermitianMatrix& a, const HermitianMatrix& b,
                    const DecisionConfig& cfg = {});

/// Decides A^2 <| B^2 directly via Q(t) = B^2 - 2 t A + t^2 I over
/// t in [lambda_min(A), lambda_max(A)], avoiding one square root.
Verdict check_order_squared(const HermitianMatrix& a, const HermitianMatrix& b,
                            const DecisionConfig& cfg = {});

/// Refutation oracle by sphere sampling: random unit vectors plus all
/// eigenvectors of S = A^{1/2}, A and B. Fails when some sample has
/// <S xi, xi>^2 > <B xi, xi> (converted to a (t, xi) certificate with
/// t = <S xi, xi>); sampling can never certify Holds, so the alternative is
/// Undecided. Independent of the pencil-scan machinery.
Verdict brute_force_order(const HermitianMatrix& a, const HermitianMatrix& b,
                          long samples, std::uint64_t seed);

/// Minimum of q/(2t) + t/2 over t > 0: attained at t = sqrt(q) with value
/// sqrt(q). For q = 0 the infimum 0 is approached but not attained.
struct HalflineMinimum {
  double t_star = 0.0;
  double value = 0.0;
  bool open_infimum = false;
};

HalflineMinimum min_halfline(double q);

/// The decision engine on an explicit pencil: certifies
/// T - 2 t S + t^2 I >= 0 for all t > 0 (S, T Hermitian, S PSD).
Verdict decide_pencil(const HermitianMatrix& s, const HermitianMatrix& t,
                      const DecisionConfig& cfg = {});

/// <(T - 2 t S + t^2) xi, xi> / ||xi||^2 for the pencil underlying
/// check_order (squared = false) or check_order_squared (squared = true).
/// This is the independent re-evaluation used to audit Fails certificates.
double quadratic_form_value(const HermitianMatrix& a, const HermitianMatrix& b,
                            bool squared, double t, const Vector& xi);

}  // namespace jorder

#pragma once

#include "jorder/linalg.hpp"
#include "jorder/types.hpp"

#include <optional>
#include <vector>

namespace jorder {

/// Frobenius residual of the subspace identity
///   P B P - (P B^{-1} P)^{-1} = P B P' (P' B P')^{-1} P' B P,  P' = 1 - P,
/// with inverses taken on the respective ranges. Requires B invertible
/// (lambda_min >= 1e-8) and the complementary block invertible on its range.
double schur_identity_check(const HermitianMatrix& b,
                            const SpectralWindow& window);

enum class SandwichSide { Lower, Upper };

struct SandwichFailure {
  double t = 0.0;
  SandwichSide side = SandwichSide::Lower;
  double lambda_min = 0.0;  // most negative eigenvalue of the deficit
};

struct PremiseStatus {
  bool passed = false;
  std::optional<SandwichFailure> first_failure;
};

/// Verifies the sandwich (2tA - t^2)^{1/2} <= B <= A^2/(2t) + t/2 at each
/// grid t (PSD slack >= -1e-9), reporting the first failure. Requires
/// sigma(A) inside [c+eps, 2c] and B PSD.
PremiseStatus sandwich_check(const HermitianMatrix& a, const HermitianMatrix& b,
                             double c, double eps,
                             const std::vector<double>& t_grid);

struct PartitionIndexReport {
  double t = 0.0;               // anchor t_i = c+eps+(i-1)(c-eps)/n
  double deviation = 0.0;       // ||t_i P_i - A P_i||
  double deviation_bound = 0.0; // (c-eps)/n
  double coupling_sq = 0.0;     // ||P_i' B P_i||^2
  double coupling_bound = 0.0;  // d ||B|| deviation^2
  bool coupling_ok = false;
};

struct PartitionReport {
  int n = 0;
  double c = 0.0;
  double eps = 0.0;
  double d = 0.0;
  std::vector<PartitionIndexReport> per_index;
  bool deviation_ok = false;          // every deviation <= bound
  double aggregate_coupling_sq = 0.0; // ||sum_i P_i' B P_i||^2
  double aggregate_bound = 0.0;       // d ||B|| (c-eps)^2 / n
  bool aggregate_ok = false;
  double final_bound = 0.0;  // (d/2)((c-eps)/n)^2 + sqrt(d ||B|| (c-eps)^2/n)
  double actual_gap = 0.0;   // ||A - B|| (operator norm)
  bool final_bound_dominates = false;
  PremiseStatus premise_status;
};

/// Builds the spectral partition P_i of A over [c+eps, 2c], evaluates every
/// quantity of the norm-bound argument and flags each inequality. The
/// inequalities involving B hold when the sandwich premise does (exactly at
/// A = B); on perturbed instances the report is diagnostic.
PartitionReport partition_pipeline(const HermitianMatrix& a,
                                   const HermitianMatrix& b, double c,
                                   double eps, int n, double d);

struct DecayPoint {
  int n = 0;
  double final_bound = 0.0;
};

/// final_bound as a function of the partition count; decreasing in n with the
/// n^{-1/2} term dominating for large n.
std::vector<DecayPoint> bound_decay_study(const HermitianMatrix& a,
                                          const HermitianMatrix& b, double c,
                                          double eps, double d,
                                          const std::vector<int>& n_list);

struct RangeFixedPointResult {
  double cp_minus_p = 0.0;       // ||C P - P||_F
  double c_minus_id_times_a = 0.0;  // ||(C - I) A||_F
};

/// For a contraction C with C A + A C* = 2A (premises checked), the range
/// projection P of A satisfies C P = P and (C - I) A = 0; returns both
/// residuals.
RangeFixedPointResult range_fixed_point_check(const GeneralMatrix& c,
                                              const HermitianMatrix& a);

}  // namespace jorder

#pragma once

#include "jorder/linalg.hpp"
#include "jorder/types.hpp"

#include <cstdint>

namespace jorder {

/// The hand-built 2x2 triple demonstrating non-transitivity of the relation:
/// A^2 <| B^2 and B^2 <| C^2 hold while A^2 <| C^2 fails. A = Re X, B = |X|,
/// C = |Y|, Re Y = B.
struct CanonicalTriple {
  HermitianMatrix a;
  HermitianMatrix b;
  HermitianMatrix c;
  GeneralMatrix x;
  GeneralMatrix y;
};

/// Exact canonical triple; internal identities (Re X = A, |X| = B, Re Y = B)
/// are verified to 1e-12 at construction.
CanonicalTriple canonical_triple();

/// Amount by which the necessary condition for (A+eps)^2 <| (B+eps)^2 fails
/// on the canonical pair: (sqrt2+eps)^2 - (eps^2 + (8/3)eps + 2)
/// = (2 sqrt2 - 8/3) eps.
double perturbation_margin(double eps);

/// Haar-conjugated PSD matrix with eigenvalues uniform in
/// [lambda_min, lambda_max]; deterministic per seed.
HermitianMatrix random_psd(Index n, std::uint64_t seed, double lambda_min,
                           double lambda_max);

/// Random matrix rescaled so the operator norm is uniform in (0, 1].
GeneralMatrix random_contraction(Index n, std::uint64_t seed);

/// Haar-distributed unitary matrix.
GeneralMatrix random_unitary(Index n, std::uint64_t seed);

/// Complex Gaussian matrix (independent standard normal re/im parts).
GeneralMatrix random_gaussian(Index n, std::uint64_t seed);

/// Random Hermitian matrix, Frobenius norm 1, deterministic per seed.
HermitianMatrix random_hermitian_direction(Index n, std::uint64_t seed);

/// Instance of the witness equation with a planted certificate:
/// A = (C0 B + B C0*)/2 for a random PSD B and random contraction C0,
/// redrawn until A is PSD (to -1e-12). Rejection keeps the planted C0 exact.
struct FeasiblePair {
  HermitianMatrix a;
  HermitianMatrix b;
  GeneralMatrix c0;
};

FeasiblePair feasible_pair(Index n, std::uint64_t seed);

/// Random Z split into A = Re Z (flagged if not PSD), B = (Z*Z)^{1/2} and
/// K = Im Z, so K solves K^2 + i(AK - KA) = B^2 - A^2 exactly.
struct ZPair {
  HermitianMatrix a;
  HermitianMatrix b;
  GeneralMatrix k;
  GeneralMatrix z;
  bool a_psd = false;
};

ZPair z_pair(Index n, std::uint64_t seed);

}  // namespace jorder

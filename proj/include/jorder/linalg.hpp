#pragma once

#include "jorder/types.hpp"

namespace jorder {

/// Eigendecomposition of a Hermitian matrix: M = V diag(lambda) V*,
/// eigenvalues ascending, eigenvector columns unitary.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

EigenDecomposition eig_hermitian(const HermitianMatrix& m);

double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);

/// Unique PSD square root via spectral calculus. Eigenvalues in
/// [-negative_tol, 0] are clamped to zero; anything more negative throws
/// NotPositiveSemidefiniteError.
HermitianMatrix psd_sqrt(const HermitianMatrix& m, double negative_tol = 1e-10);

/// M with eigenvalues below zero clamped to zero (same rejection rule as
/// psd_sqrt).
HermitianMatrix psd_clamp(const HermitianMatrix& m, double negative_tol = 1e-10);

/// The Hermitian product M*M of a Hermitian matrix.
HermitianMatrix square(const HermitianMatrix& m);

/// Polar decomposition X = U P with P = (X*X)^{1/2} PSD and U the canonical
/// partial isometry (zero on ker X, unitary when X is invertible).
struct PolarDecomposition {
  GeneralMatrix unitary;
  HermitianMatrix positive;
};

PolarDecomposition polar(const GeneralMatrix& x);

/// Largest singular value.
double operator_norm(const GeneralMatrix& x);

/// Spectral projection onto eigenvectors of m with eigenvalues in
/// [lower, upper). Throws EigenvalueOnBoundaryError when an eigenvalue lies
/// within boundary_tol of either edge: callers must nudge edges instead of
/// relying on a floating-point open/closed distinction.
HermitianMatrix spectral_projection(const HermitianMatrix& m, double lower,
                                    double upper, double boundary_tol = 1e-8);

/// An interval together with the spectral projection it induces on a fixed
/// Hermitian matrix.
struct SpectralWindow {
  double lower = 0.0;
  double upper = 0.0;
  HermitianMatrix projection;
};

SpectralWindow make_spectral_window(const HermitianMatrix& m, double lower,
                                    double upper, double boundary_tol = 1e-8);

}  // namespace jorder

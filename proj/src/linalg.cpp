#include "jorder/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace jorder {

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    const double residual =
        (m.matrix() - m.matrix().diagonal().asDiagonal().toDenseMatrix())
            .norm();
    throw EigenSolverError("hermitian eigensolver did not converge; "
                           "off-diagonal Frobenius norm " +
                           std::to_string(residual));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianMatrix& m) {
  return eig_hermitian(m).eigenvalues.minCoeff();
}

double max_eigenvalue(const HermitianMatrix& m) {
  return eig_hermitian(m).eigenvalues.maxCoeff();
}

namespace {

RealVector clamped_spectrum(const RealVector& values, double negative_tol,
                            const char* op) {
  if (values.minCoeff() < -negative_tol) {
    throw NotPositiveSemidefiniteError(
        std::string(op) + ": eigenvalue " + std::to_string(values.minCoeff()) +
        " below -" + std::to_string(negative_tol));
  }
  return values.cwiseMax(0.0);
}

}  // namespace

HermitianMatrix psd_sqrt(const HermitianMatrix& m, double negative_tol) {
  const EigenDecomposition eig = eig_hermitian(m);
  const RealVector lambda =
      clamped_spectrum(eig.eigenvalues, negative_tol, "psd_sqrt");
  const Matrix result = eig.eigenvectors *
                        lambda.cwiseSqrt().cast<Complex>().asDiagonal() *
                        eig.eigenvectors.adjoint();
  return HermitianMatrix::symmetrized(result);
}

HermitianMatrix psd_clamp(const HermitianMatrix& m, double negative_tol) {
  const EigenDecomposition eig = eig_hermitian(m);
  const RealVector lambda =
      clamped_spectrum(eig.eigenvalues, negative_tol, "psd_clamp");
  return HermitianMatrix::symmetrized(eig.eigenvectors *
                                      lambda.cast<Complex>().asDiagonal() *
                                      eig.eigenvectors.adjoint());
}

HermitianMatrix square(const HermitianMatrix& m) {
  return HermitianMatrix::symmetrized(m.matrix() * m.matrix());
}

PolarDecomposition polar(const GeneralMatrix& x) {
  if (x.rows() != x.cols() || x.rows() < 1) {
    throw InvalidConfigError("polar: matrix must be square, dimension >= 1");
  }
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sigma = svd.singularValues();
  const double cutoff = 1e-12 * std::max(sigma.maxCoeff(), 1e-300);

  // U = sum over significant singular triplets of w_i v_i*; directions in
  // ker X contribute nothing, making U the canonical partial isometry.
  Matrix unitary = Matrix::Zero(x.rows(), x.cols());
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) {
      unitary += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    }
  }
  const Matrix positive = svd.matrixV() * sigma.cast<Complex>().asDiagonal() *
                          svd.matrixV().adjoint();
  return {unitary, HermitianMatrix::symmetrized(positive)};
}

double operator_norm(const GeneralMatrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().maxCoeff();
}

namespace {

void check_window_edges(const RealVector& eigenvalues, double lower,
                        double upper, double boundary_tol) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw InvalidIntervalError("spectral window requires finite lower < upper");
  }
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double d = std::min(std::abs(eigenvalues(i) - lower),
                              std::abs(eigenvalues(i) - upper));
    if (d <= boundary_tol) {
      throw EigenvalueOnBoundaryError(
          "eigenvalue " + std::to_string(eigenvalues(i)) +
          " within " + std::to_string(boundary_tol) + " of window edge");
    }
  }
}

}  // namespace

HermitianMatrix spectral_projection(const HermitianMatrix& m, double lower,
                                    double upper, double boundary_tol) {
  const EigenDecomposition eig = eig_hermitian(m);
  check_window_edges(eig.eigenvalues, lower, upper, boundary_tol);
  Matrix proj = Matrix::Zero(m.dim(), m.dim());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) >= lower && eig.eigenvalues(i) < upper) {
      proj += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    }
  }
  return HermitianMatrix::symmetrized(proj);
}

SpectralWindow make_spectral_window(const HermitianMatrix& m, double lower,
                                    double upper, double boundary_tol) {
  return {lower, upper, spectral_projection(m, lower, upper, boundary_tol)};
}

}  // namespace jorder

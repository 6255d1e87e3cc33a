#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace jorder {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// General dense complex square matrix (no symmetry constraint).
/// Squareness and positive dimension are enforced at operation boundaries.
using GeneralMatrix = Matrix;

// ---------------------------------------------------------------------------
// Error hierarchy
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error {
  using Error::Error;
};
struct NotPositiveSemidefiniteError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct InvalidIntervalError : Error {
  using Error::Error;
};
struct EigenvalueOnBoundaryError : Error {
  using Error::Error;
};
struct SpectrumOutOfWindowError : Error {
  using Error::Error;
};
struct SingularBlockError : Error {
  using Error::Error;
};
struct PremiseViolatedError : Error {
  using Error::Error;
};
struct GenerationExhaustedError : Error {
  using Error::Error;
};
struct EigenSolverError : Error {
  using Error::Error;
};
struct InvalidConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// HermitianMatrix
// ---------------------------------------------------------------------------

/// Dense complex square matrix with enforced Hermitian symmetry.
///
/// Construction symmetrizes the input, M <- (M + M*)/2, so the stored matrix
/// is exactly Hermitian. Inputs whose asymmetry exceeds the rejection
/// tolerance (1e-8, relative to max(1, largest entry)) are rejected.
class HermitianMatrix {
 public:
  static constexpr double kRejectTolerance = 1e-8;

  explicit HermitianMatrix(const Matrix& m) : m_(check_and_symmetrize(m)) {}

  static HermitianMatrix identity(Index n) {
    return HermitianMatrix(unchecked{}, Matrix::Identity(n, n));
  }
  static HermitianMatrix zero(Index n) {
    require_dim(n);
    return HermitianMatrix(unchecked{}, Matrix::Zero(n, n));
  }
  static HermitianMatrix from_diagonal(const RealVector& d) {
    require_dim(d.size());
    Matrix m = Matrix::Zero(d.size(), d.size());
    m.diagonal() = d.cast<Complex>();
    return HermitianMatrix(unchecked{}, std::move(m));
  }
  /// Wraps a matrix that is Hermitian by construction, still symmetrizing to
  /// keep the exact-symmetry invariant but skipping the rejection check.
  static HermitianMatrix symmetrized(const Matrix& m) {
    require_square(m);
    return HermitianMatrix(unchecked{}, 0.5 * (m + m.adjoint()));
  }

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  struct unchecked {};
  HermitianMatrix(unchecked, Matrix m) : m_(std::move(m)) {}

  static void require_dim(Index n) {
    if (n < 1) throw InvalidConfigError("matrix dimension must be >= 1");
  }
  static void require_square(const Matrix& m) {
    require_dim(m.rows());
    if (m.rows() != m.cols()) throw InvalidConfigError("matrix must be square");
  }
  static Matrix check_and_symmetrize(const Matrix& m) {
    require_square(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kRejectTolerance * scale) {
      throw NotHermitianError("matrix is not Hermitian: asymmetry " +
                              std::to_string(asym));
    }
    return 0.5 * (m + m.adjoint());
  }

  Matrix m_;
};

}  // namespace jorder

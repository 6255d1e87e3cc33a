#include "jorder/replication.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jorder {

namespace {

// Orthonormal basis of the range of a projection (eigenvectors with
// eigenvalue close to 1).
Matrix range_basis(const HermitianMatrix& projection) {
  const EigenDecomposition eig = eig_hermitian(projection);
  Index rank = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > 0.5) ++rank;
  }
  Matrix basis(projection.dim(), rank);
  Index k = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > 0.5) basis.col(k++) = eig.eigenvectors.col(i);
  }
  return basis;
}

Matrix invert_on_subspace(const Matrix& compressed, const char* what) {
  if (compressed.rows() == 0) return compressed;
  const HermitianMatrix h = HermitianMatrix::symmetrized(compressed);
  const EigenDecomposition eig = eig_hermitian(h);
  const double lambda_max = eig.eigenvalues.cwiseAbs().maxCoeff();
  if (eig.eigenvalues.cwiseAbs().minCoeff() <=
      1e-10 * std::max(lambda_max, 1e-300)) {
    throw SingularBlockError(std::string(what) +
                             " is singular on its subspace");
  }
  return eig.eigenvectors * eig.eigenvalues.cwiseInverse().cast<Complex>().asDiagonal() *
         eig.eigenvectors.adjoint();
}

void require_spectrum_in_window(const HermitianMatrix& a, double c,
                                double eps) {
  const EigenDecomposition eig = eig_hermitian(a);
  if (eig.eigenvalues.minCoeff() < c + eps ||
      eig.eigenvalues.maxCoeff() > 2.0 * c) {
    throw SpectrumOutOfWindowError(
        "spectrum of A not inside [c+eps, 2c] = [" + std::to_string(c + eps) +
        ", " + std::to_string(2.0 * c) + "]");
  }
}

}  // namespace

double schur_identity_check(const HermitianMatrix& b,
                            const SpectralWindow& window) {
  if (window.projection.dim() != b.dim()) {
    throw InvalidConfigError("schur_identity_check: dimension mismatch");
  }
  if (min_eigenvalue(b) < 1e-8) {
    throw NotPositiveSemidefiniteError(
        "schur_identity_check: B must be invertible (lambda_min >= 1e-8)");
  }
  const Matrix v = range_basis(window.projection);
  const HermitianMatrix complement = HermitianMatrix::symmetrized(
      Matrix::Identity(b.dim(), b.dim()) - window.projection.matrix());
  const Matrix w = range_basis(complement);

  const Matrix b_inv = invert_on_subspace(b.matrix(), "B");

  // All blocks in the coordinates of the two subspaces.
  const Matrix b_pp = v.adjoint() * b.matrix() * v;
  const Matrix binv_pp = v.adjoint() * b_inv * v;
  const Matrix lhs = b_pp - invert_on_subspace(binv_pp, "P B^{-1} P");

  Matrix rhs = Matrix::Zero(b_pp.rows(), b_pp.cols());
  if (w.cols() > 0) {
    const Matrix b_pq = v.adjoint() * b.matrix() * w;
    const Matrix b_qq = w.adjoint() * b.matrix() * w;
    rhs = b_pq * invert_on_subspace(b_qq, "P' B P'") * b_pq.adjoint();
  }
  return (lhs - rhs).norm();
}

PremiseStatus sandwich_check(const HermitianMatrix& a, const HermitianMatrix& b,
                             double c, double eps,
                             const std::vector<double>& t_grid) {
  if (!(c > 0.0) || !(eps > 0.0) || !(eps < c)) {
    throw InvalidIntervalError("sandwich_check: require 0 < eps < c");
  }
  require_spectrum_in_window(a, c, eps);
  if (min_eigenvalue(b) < -1e-9) {
    throw NotPositiveSemidefiniteError("sandwich_check: B must be PSD");
  }
  const Index n = a.dim();
  const Matrix id = Matrix::Identity(n, n);

  PremiseStatus status;
  for (const double t : t_grid) {
    if (t < c + eps || t > 2.0 * c) {
      throw InvalidIntervalError("sandwich_check: grid t outside [c+eps, 2c]");
    }
    const HermitianMatrix inner =
        HermitianMatrix::symmetrized(2.0 * t * a.matrix() - t * t * id);
    const HermitianMatrix root = psd_sqrt(inner, 1e-9);

    const double lower_slack = min_eigenvalue(
        HermitianMatrix::symmetrized(b.matrix() - root.matrix()));
    if (lower_slack < -1e-9) {
      status.first_failure = {t, SandwichSide::Lower, lower_slack};
      return status;
    }
    const Matrix upper = a.matrix() * a.matrix() / (2.0 * t) + 0.5 * t * id;
    const double upper_slack = min_eigenvalue(
        HermitianMatrix::symmetrized(upper - b.matrix()));
    if (upper_slack < -1e-9) {
      status.first_failure = {t, SandwichSide::Upper, upper_slack};
      return status;
    }
  }
  status.passed = true;
  return status;
}

PartitionReport partition_pipeline(const HermitianMatrix& a,
                                   const HermitianMatrix& b, double c,
                                   double eps, int n, double d) {
  if (n < 1) throw InvalidConfigError("partition_pipeline: n >= 1");
  if (!(d > 0.0)) throw InvalidConfigError("partition_pipeline: d > 0");
  require_spectrum_in_window(a, c, eps);
  if (min_eigenvalue(b) < 1e-8) {
    throw NotPositiveSemidefiniteError(
        "partition_pipeline: B must be invertible");
  }

  PartitionReport report;
  report.n = n;
  report.c = c;
  report.eps = eps;
  report.d = d;

  const Index dim = a.dim();
  const Matrix id = Matrix::Identity(dim, dim);
  const double span = c - eps;  // 2c - (c + eps)
  const double cell = span / n;
  const double b_norm = operator_norm(b.matrix());

  // Eigenvalues must stay away from every partition edge; the windows are
  // then unambiguous despite the half-open convention.
  {
    const EigenDecomposition eig = eig_hermitian(a);
    for (int i = 0; i <= n; ++i) {
      const double edge = c + eps + i * cell;
      for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
        if (std::abs(eig.eigenvalues(k) - edge) <= 1e-8) {
          throw EigenvalueOnBoundaryError(
              "partition_pipeline: eigenvalue within 1e-8 of partition edge " +
              std::to_string(edge));
        }
      }
    }
  }

  Matrix coupling_sum = Matrix::Zero(dim, dim);
  std::vector<double> anchors;
  bool deviation_ok = true;
  for (int i = 1; i <= n; ++i) {
    const double t_i = c + eps + (i - 1) * cell;
    anchors.push_back(t_i);
    // Final window reaches just past 2c so its top eigenvalue is included.
    const double hi = (i == n) ? 2.0 * c + 1e-7 : t_i + cell;
    const HermitianMatrix p = spectral_projection(a, t_i, hi, 1e-9);
    const Matrix p_perp = id - p.matrix();

    PartitionIndexReport entry;
    entry.t = t_i;
    entry.deviation = operator_norm(t_i * p.matrix() - a.matrix() * p.matrix());
    entry.deviation_bound = cell;
    const Matrix coupling = p_perp * b.matrix() * p.matrix();
    const double coupling_norm = operator_norm(coupling);
    entry.coupling_sq = coupling_norm * coupling_norm;
    entry.coupling_bound = d * b_norm * entry.deviation * entry.deviation;
    entry.coupling_ok = entry.coupling_sq <= entry.coupling_bound + 1e-9;
    deviation_ok = deviation_ok && entry.deviation <= entry.deviation_bound;
    coupling_sum += coupling;
    report.per_index.push_back(entry);
  }
  report.deviation_ok = deviation_ok;

  const double aggregate_norm = operator_norm(coupling_sum);
  report.aggregate_coupling_sq = aggregate_norm * aggregate_norm;
  report.aggregate_bound = d * b_norm * span * span / n;
  report.aggregate_ok =
      report.aggregate_coupling_sq <= report.aggregate_bound + 1e-9;

  report.final_bound =
      0.5 * d * cell * cell + std::sqrt(d * b_norm * span * span / n);
  report.actual_gap = operator_norm(a.matrix() - b.matrix());
  report.final_bound_dominates =
      report.final_bound >= report.actual_gap - 1e-8;

  report.premise_status = sandwich_check(a, b, c, eps, anchors);
  return report;
}

std::vector<DecayPoint> bound_decay_study(const HermitianMatrix& a,
                                          const HermitianMatrix& b, double c,
                                          double eps, double d,
                                          const std::vector<int>& n_list) {
  std::vector<DecayPoint> out;
  out.reserve(n_list.size());
  for (const int n : n_list) {
    const PartitionReport report = partition_pipeline(a, b, c, eps, n, d);
    out.push_back({n, report.final_bound});
  }
  return out;
}

RangeFixedPointResult range_fixed_point_check(const GeneralMatrix& c,
                                              const HermitianMatrix& a) {
  if (c.rows() != a.dim() || c.cols() != a.dim()) {
    throw InvalidConfigError("range_fixed_point_check: dimension mismatch");
  }
  const double norm_c = operator_norm(c);
  if (norm_c > 1.0 + 1e-10) {
    throw PremiseViolatedError("range_fixed_point_check: ||C|| = " +
                               std::to_string(norm_c) + " exceeds 1");
  }
  const double equation_residual =
      (c * a.matrix() + a.matrix() * c.adjoint() - 2.0 * a.matrix()).norm();
  if (equation_residual > 1e-8 * std::max(1.0, a.matrix().norm())) {
    throw PremiseViolatedError(
        "range_fixed_point_check: CA + AC* != 2A, residual " +
        std::to_string(equation_residual));
  }
  if (min_eigenvalue(a) < -1e-10) {
    throw NotPositiveSemidefiniteError("range_fixed_point_check: A not PSD");
  }

  // Range projection with scale-invariant rank cutoff.
  const EigenDecomposition eig = eig_hermitian(a);
  const double cutoff = 1e-9 * std::max(eig.eigenvalues.maxCoeff(), 0.0);
  Matrix p = Matrix::Zero(a.dim(), a.dim());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > cutoff) {
      p += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    }
  }

  RangeFixedPointResult result;
  result.cp_minus_p = (c * p - p).norm();
  result.c_minus_id_times_a =
      ((c - Matrix::Identity(a.dim(), a.dim())) * a.matrix()).norm();
  return result;
}

}  // namespace jorder

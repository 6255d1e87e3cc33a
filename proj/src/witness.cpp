#include "jorder/witness.hpp"

#include "jorder/instances.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace jorder {

namespace {

// Real coordinates of a complex n x n matrix: [re(vec C); im(vec C)].
RealVector complex_to_real(const GeneralMatrix& c) {
  const Index n2 = c.size();
  RealVector x(2 * n2);
  Eigen::Map<const Eigen::VectorXcd> v(c.data(), n2);
  x.head(n2) = v.real();
  x.tail(n2) = v.imag();
  return x;
}

GeneralMatrix real_to_complex(const RealVector& x, Index n) {
  GeneralMatrix c(n, n);
  Eigen::Map<Eigen::VectorXcd> v(c.data(), n * n);
  v.real() = x.head(n * n);
  v.imag() = x.tail(n * n);
  return c;
}

// Real coordinates of a Hermitian matrix: diagonal, then re/im of the upper
// triangle. Used only as constraint coordinates, not as a metric.
RealVector hermitian_coords(const Matrix& h) {
  const Index n = h.rows();
  RealVector y(n * n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) y(k++) = h(i, i).real();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      y(k++) = h(i, j).real();
      y(k++) = h(i, j).imag();
    }
  }
  return y;
}

// Orthonormal-ish basis of Hermitian n x n matrices (n^2 real dimensions).
std::vector<Matrix> hermitian_basis(Index n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      basis.push_back(e);
      Matrix f = Matrix::Zero(n, n);
      f(i, j) = Complex(0.0, 1.0);
      f(j, i) = Complex(0.0, -1.0);
      basis.push_back(f);
    }
  }
  return basis;
}

RealVector hermitian_to_basis_coords(const Matrix& h,
                                     const std::vector<Matrix>& basis) {
  RealVector y(static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double norm2 = basis[k].squaredNorm();
    y(static_cast<Index>(k)) =
        (basis[k].adjoint() * h).trace().real() / norm2;
  }
  return y;
}

Matrix basis_coords_to_hermitian(const RealVector& y,
                                 const std::vector<Matrix>& basis, Index n) {
  Matrix h = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    h += y(static_cast<Index>(k)) * basis[k];
  }
  return h;
}

double equation_residual_for(const GeneralMatrix& c, const HermitianMatrix& a,
                             const HermitianMatrix& b) {
  return (c * b.matrix() + b.matrix() * c.adjoint() - 2.0 * a.matrix()).norm();
}

}  // namespace

bool witness_accepted(double equation_residual, double norm_excess,
                      double a_frobenius) {
  return equation_residual <= 1e-7 * std::max(1.0, a_frobenius) &&
         norm_excess <= 1e-8;
}

namespace detail {

GeneralMatrix project_norm_ball(const GeneralMatrix& c) {
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma.maxCoeff() <= 1.0) return c;
  sigma = sigma.cwiseMin(1.0);
  return svd.matrixU() * sigma.cast<Complex>().asDiagonal() *
         svd.matrixV().adjoint();
}

AffineEquationProjector::AffineEquationProjector(const HermitianMatrix& b,
                                                 const HermitianMatrix& rhs)
    : n_(b.dim()) {
  const Index n = n_;
  constraint_.resize(n * n, 2 * n * n);
  for (Index k = 0; k < 2 * n * n; ++k) {
    RealVector unit = RealVector::Zero(2 * n * n);
    unit(k) = 1.0;
    const GeneralMatrix c = real_to_complex(unit, n);
    constraint_.col(k) =
        hermitian_coords(c * b.matrix() + b.matrix() * c.adjoint());
  }
  rhs_ = hermitian_coords(rhs.matrix());

  const RealMatrix normal = constraint_ * constraint_.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(normal);
  const RealVector& lambda = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(lambda.maxCoeff(), 0.0);
  RealVector inv = RealVector::Zero(lambda.size());
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) inv(i) = 1.0 / lambda(i);
  }
  normal_pinv_ = eig.eigenvectors() * inv.asDiagonal() *
                 eig.eigenvectors().transpose();
}

GeneralMatrix AffineEquationProjector::project(const GeneralMatrix& c) const {
  const RealVector x = complex_to_real(c);
  const RealVector defect = constraint_ * x - rhs_;
  const RealVector corrected =
      x - constraint_.transpose() * (normal_pinv_ * defect);
  return real_to_complex(corrected, n_);
}

FactorizationData factor_pencil(const HermitianMatrix& s,
                                const HermitianMatrix& t,
                                const GeneralMatrix& k0, int max_iter,
                                double tol) {
  const Index n = s.dim();
  if (t.dim() != n || k0.rows() != n || k0.cols() != n) {
    throw InvalidConfigError("factor_pencil: dimension mismatch");
  }
  const Matrix& sm = s.matrix();
  const Matrix s2 = sm * sm;
  const double scale = std::max(1.0, t.matrix().norm());
  const auto basis = hermitian_basis(n);
  const Complex iu(0.0, 1.0);

  Matrix k = 0.5 * (k0 + k0.adjoint());  // keep the iterate Hermitian
  const auto f_of = [&](const Matrix& kk) -> Matrix {
    return s2 + kk * kk + iu * (sm * kk - kk * sm) - t.matrix();
  };

  Matrix f = f_of(k);
  double res = f.norm();
  int iter = 0;
  for (; iter < max_iter && res > tol * scale; ++iter) {
    RealMatrix jac(static_cast<Index>(basis.size()),
                   static_cast<Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Matrix dh = k * basis[c] + basis[c] * k +
                        iu * (sm * basis[c] - basis[c] * sm);
      jac.col(static_cast<Index>(c)) = hermitian_to_basis_coords(dh, basis);
    }
    const RealVector fvec = hermitian_to_basis_coords(f, basis);
    // Least-squares Newton step; tolerates the singular Jacobian at K = 0.
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(jac);
    const RealVector step = cod.solve(-fvec);
    const Matrix h = basis_coords_to_hermitian(step, basis, n);

    double alpha = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Matrix k_next = k + alpha * h;
      const Matrix f_next = f_of(k_next);
      const double res_next = f_next.norm();
      if (res_next < (1.0 - 1e-4 * alpha) * res) {
        k = k_next;
        f = f_next;
        res = res_next;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;  // stall: line search cannot reduce the residual
  }

  FactorizationData out;
  out.z = sm + iu * k;
  out.hermitian_part_residual = (0.5 * (out.z + out.z.adjoint()) - sm).norm();
  out.modulus_residual = (out.z.adjoint() * out.z - t.matrix()).norm();
  out.iterations = iter;
  out.converged = res <= tol * scale;
  return out;
}

FactorizationData factor_pencil_multistart(const HermitianMatrix& s,
                                           const HermitianMatrix& t,
                                           int max_iter, double tol) {
  const Index n = s.dim();
  std::vector<GeneralMatrix> starts;
  starts.push_back(GeneralMatrix::Zero(n, n));
  // Commuting-case guess: K = (T - S^2)^{1/2} on the positive part.
  const HermitianMatrix gap = HermitianMatrix::symmetrized(
      t.matrix() - s.matrix() * s.matrix());
  const EigenDecomposition eig = eig_hermitian(gap);
  const RealVector pos = eig.eigenvalues.cwiseMax(0.0);
  starts.push_back(eig.eigenvectors *
                   pos.cwiseSqrt().cast<Complex>().asDiagonal() *
                   eig.eigenvectors.adjoint());
  const double span =
      std::sqrt(std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1e-3));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    starts.push_back(span * random_hermitian_direction(n, seed).matrix());
  }

  FactorizationData best;
  for (const auto& k0 : starts) {
    FactorizationData attempt = factor_pencil(s, t, k0, max_iter, tol);
    if (attempt.converged) return attempt;
    if (attempt.modulus_residual < best.modulus_residual) best = attempt;
  }
  return best;
}

}  // namespace detail

FactorizationData solve_hermitian_quadratic(const HermitianMatrix& a,
                                            const HermitianMatrix& b,
                                            const GeneralMatrix& k0,
                                            int max_iter, double tol) {
  return detail::factor_pencil(a, square(b), k0, max_iter, tol);
}

ContractionWitness verify_witness(const GeneralMatrix& c,
                                  const HermitianMatrix& a,
                                  const HermitianMatrix& b) {
  if (c.rows() != a.dim() || c.cols() != a.dim() || b.dim() != a.dim()) {
    throw InvalidConfigError("verify_witness: dimension mismatch");
  }
  ContractionWitness w;
  w.c = c;
  w.equation_residual = equation_residual_for(c, a, b);
  w.norm_excess = std::max(0.0, operator_norm(c) - 1.0);
  w.iterations = 0;
  w.accepted = witness_accepted(w.equation_residual, w.norm_excess,
                                a.matrix().norm());

  // Implied chain 2tA <= B^2 + t^2 I, probed at the spectral extremes of A.
  const EigenDecomposition eig_a = eig_hermitian(a);
  const Matrix b2 = b.matrix() * b.matrix();
  double slack = std::numeric_limits<double>::infinity();
  for (const double t :
       {eig_a.eigenvalues.minCoeff(), eig_a.eigenvalues.maxCoeff()}) {
    const HermitianMatrix chain = HermitianMatrix::symmetrized(
        b2 + t * t * Matrix::Identity(a.dim(), a.dim()) - 2.0 * t * a.matrix());
    slack = std::min(slack, min_eigenvalue(chain));
  }
  w.chain_slack = slack;
  return w;
}

ContractionWitness find_contraction(const HermitianMatrix& a,
                                    const HermitianMatrix& b, int max_iter,
                                    double tol) {
  if (a.dim() != b.dim()) {
    throw InvalidConfigError("find_contraction: dimension mismatch");
  }
  const Index n = a.dim();
  const double a_fro = a.matrix().norm();
  const double accept_eq = std::max(tol * std::max(1.0, a_fro), 0.0);

  const detail::AffineEquationProjector affine(
      b, HermitianMatrix::symmetrized(2.0 * a.matrix()));

  // Warm start: identity when A is close to B, else the affine projection
  // of zero.
  GeneralMatrix current;
  if (operator_norm(a.matrix() - b.matrix()) <=
      0.1 * std::max(operator_norm(b.matrix()), 1e-300)) {
    current = GeneralMatrix::Identity(n, n);
  } else {
    current = affine.project(GeneralMatrix::Zero(n, n));
  }

  ContractionWitness best;
  best.c = current;
  best.iterations = 0;

  GeneralMatrix p = GeneralMatrix::Zero(n, n);  // Dykstra corrections
  GeneralMatrix q = GeneralMatrix::Zero(n, n);

  for (int iter = 0; iter <= max_iter; ++iter) {
    const GeneralMatrix on_ball = detail::project_norm_ball(current + p);
    p = current + p - on_ball;

    const double eq_res = equation_residual_for(on_ball, a, b);
    const double excess = std::max(0.0, operator_norm(on_ball) - 1.0);
    if (eq_res < best.equation_residual) {
      best.c = on_ball;
      best.equation_residual = eq_res;
      best.norm_excess = excess;
      best.iterations = iter;
    }
    if (eq_res <= accept_eq && excess <= 1e-8) {
      best.c = on_ball;
      best.equation_residual = eq_res;
      best.norm_excess = excess;
      best.iterations = iter;
      best.accepted = true;
      return best;
    }

    const GeneralMatrix on_affine = affine.project(on_ball + q);
    q = on_ball + q - on_affine;
    current = on_affine;
  }

  // Dykstra stalled. On feasible pairs whose intersection only touches the
  // ball boundary the projections converge sublinearly, so attempt the
  // factorization route: Z = A + iK with Z*Z = B^2 gives the exact witness
  // C = U from the polar factor Z = U B.
  FactorizationData factor =
      detail::factor_pencil_multistart(a, square(b), 60, 1e-11);
  if (factor.converged) {
    const PolarDecomposition pd = polar(factor.z);
    const double eq_res = equation_residual_for(pd.unitary, a, b);
    const double excess = std::max(0.0, operator_norm(pd.unitary) - 1.0);
    if (eq_res <= accept_eq && excess <= 1e-8) {
      ContractionWitness w;
      w.c = pd.unitary;
      w.equation_residual = eq_res;
      w.norm_excess = excess;
      w.iterations = max_iter + factor.iterations;
      w.accepted = true;
      return w;
    }
  }

  best.accepted = false;
  return best;
}

}  // namespace jorder

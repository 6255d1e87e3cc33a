#include "jorder/instances.hpp"

#include <cmath>
#include <random>

namespace jorder {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void verify_triple(const CanonicalTriple& t) {
  const auto close = [](const Matrix& u, const Matrix& v) {
    return (u - v).cwiseAbs().maxCoeff() <= 1e-12;
  };
  const Matrix re_x = 0.5 * (t.x + t.x.adjoint());
  const Matrix re_y = 0.5 * (t.y + t.y.adjoint());
  const HermitianMatrix xmod =
      psd_sqrt(HermitianMatrix::symmetrized(t.x.adjoint() * t.x));
  if (!close(re_x, t.a.matrix()) || !close(xmod.matrix(), t.b.matrix()) ||
      !close(re_y, t.b.matrix())) {
    throw Error("canonical triple failed internal consistency checks");
  }
}

std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

GeneralMatrix gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  GeneralMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      g(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  return g;
}

GeneralMatrix haar_unitary(Index n, std::mt19937_64& rng) {
  const GeneralMatrix g = gaussian(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Complex(1, 0);
  }
  return q;
}

}  // namespace

CanonicalTriple canonical_triple() {
  GeneralMatrix x(2, 2), y(2, 2);
  x << kSqrt2, 1.0, 0.0, kSqrt2;
  y << 4.0 / 3.0, 2.0 * kSqrt2 / 3.0, 0.0, 5.0 / 3.0;

  Matrix a(2, 2), b(2, 2);
  a << kSqrt2, 0.5, 0.5, kSqrt2;
  b << 4.0 / 3.0, kSqrt2 / 3.0, kSqrt2 / 3.0, 5.0 / 3.0;

  CanonicalTriple t{HermitianMatrix(a), HermitianMatrix(b),
                    psd_sqrt(HermitianMatrix::symmetrized(y.adjoint() * y)), x,
                    y};
  verify_triple(t);
  return t;
}

double perturbation_margin(double eps) {
  if (eps < 0.0) throw DomainError("perturbation_margin: eps must be >= 0");
  return (2.0 * kSqrt2 - 8.0 / 3.0) * eps;
}

HermitianMatrix random_psd(Index n, std::uint64_t seed, double lambda_min,
                           double lambda_max) {
  if (!(0.0 <= lambda_min && lambda_min <= lambda_max)) {
    throw InvalidIntervalError("random_psd: need 0 <= lambda_min <= lambda_max");
  }
  auto rng = engine(seed);
  const GeneralMatrix q = haar_unitary(n, rng);
  std::uniform_real_distribution<double> uniform(lambda_min, lambda_max);
  RealVector lambda(n);
  for (Index i = 0; i < n; ++i) lambda(i) = uniform(rng);
  return HermitianMatrix::symmetrized(q * lambda.cast<Complex>().asDiagonal() *
                                      q.adjoint());
}

GeneralMatrix random_contraction(Index n, std::uint64_t seed) {
  auto rng = engine(seed);
  // Centered at the identity with spread ~ 1/sqrt(n); keeps the Hermitian
  // part of C B + B C* positive often enough for rejection sampling.
  const double sigma = 0.6 / std::sqrt(static_cast<double>(n));
  const GeneralMatrix g =
      GeneralMatrix::Identity(n, n) + sigma * gaussian(n, rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double target = 1.0 - uniform(rng);  // uniform in (0, 1]
  return g * (target / operator_norm(g));
}

GeneralMatrix random_unitary(Index n, std::uint64_t seed) {
  auto rng = engine(seed);
  return haar_unitary(n, rng);
}

GeneralMatrix random_gaussian(Index n, std::uint64_t seed) {
  auto rng = engine(seed);
  return gaussian(n, rng);
}

HermitianMatrix random_hermitian_direction(Index n, std::uint64_t seed) {
  auto rng = engine(seed);
  const GeneralMatrix g = gaussian(n, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  h /= h.norm();
  return HermitianMatrix::symmetrized(h);
}

FeasiblePair feasible_pair(Index n, std::uint64_t seed) {
  constexpr int kMaxRetries = 1000;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const std::uint64_t sub = seed * 0x9e3779b97f4a7c15ULL +
                              static_cast<std::uint64_t>(attempt);
    const HermitianMatrix b = random_psd(n, sub ^ 0x517cc1b727220a95ULL, 0.1, 2.0);
    const GeneralMatrix c0 = random_contraction(n, sub ^ 0x2545f4914f6cdd1dULL);
    const Matrix a_raw = 0.5 * (c0 * b.matrix() + b.matrix() * c0.adjoint());
    const HermitianMatrix a = HermitianMatrix::symmetrized(a_raw);
    if (min_eigenvalue(a) >= -1e-12) {
      return {a, b, c0};
    }
  }
  throw GenerationExhaustedError(
      "feasible_pair: no PSD draw after 1000 retries (n=" + std::to_string(n) +
      ", seed=" + std::to_string(seed) + ")");
}

ZPair z_pair(Index n, std::uint64_t seed) {
  auto rng = engine(seed);
  const GeneralMatrix z = gaussian(n, rng);
  const HermitianMatrix a = HermitianMatrix::symmetrized(0.5 * (z + z.adjoint()));
  const HermitianMatrix b =
      psd_sqrt(HermitianMatrix::symmetrized(z.adjoint() * z));
  const GeneralMatrix k = (z - z.adjoint()) / Complex(0.0, 2.0);
  const bool a_psd = min_eigenvalue(a) >= -1e-10;
  return {a, b, k, z, a_psd};
}

}  // namespace jorder

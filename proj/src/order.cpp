#include "jorder/order.hpp"

#include "jorder/instances.hpp"
#include "jorder/witness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace jorder {

namespace {

// Verdicts are exact only up to floating point. Floor certificates use the
// same band as the Fails re-validation threshold (1e-12); Fails emission
// demands twice that, so certificates re-validate with headroom.
constexpr double kExactnessBand = 1e-12;
constexpr double kFailsEmission = 2e-12;

struct PencilEval {
  double value = 0.0;  // lambda_min(T - 2tS + t^2)
  Vector xi;           // minimizing eigenvector
};

class Pencil {
 public:
  Pencil(const HermitianMatrix& s, const HermitianMatrix& t)
      : s_(s.matrix()), t_(t.matrix()), id_(Matrix::Identity(s.dim(), s.dim())) {
    if (s.dim() != t.dim())
      throw InvalidConfigError("pencil: dimension mismatch");
  }

  PencilEval eval(double t, long& evaluations) const {
    ++evaluations;
    const HermitianMatrix q =
        HermitianMatrix::symmetrized(t_ - 2.0 * t * s_ + (t * t) * id_);
    const EigenDecomposition eig = eig_hermitian(q);
    return {eig.eigenvalues(0), eig.eigenvectors.col(0)};
  }

  const Matrix& s() const { return s_; }
  const Matrix& t() const { return t_; }

 private:
  Matrix s_;
  Matrix t_;
  Matrix id_;
};

struct Cell {
  double center;
  double half_width;
};

FailsCertificate polish_fails(const Pencil& pencil, double t,
                              const PencilEval& at_t, long& evaluations) {
  // One Newton step on the fiber quadratic q_xi(t): the minimizer is exactly
  // <S xi, xi>, then re-take the worst eigenvector there.
  FailsCertificate cert;
  cert.t = t;
  cert.xi = at_t.xi;
  cert.value = at_t.value;

  const double t_polished =
      (at_t.xi.adjoint() * pencil.s() * at_t.xi).value().real();
  if (t_polished > 0.0 && std::isfinite(t_polished)) {
    const PencilEval polished = pencil.eval(t_polished, evaluations);
    if (polished.value < cert.value) {
      cert.t = t_polished;
      cert.xi = polished.xi;
      cert.value = polished.value;
    }
  }
  cert.xi.normalize();
  cert.value = ((cert.xi.adjoint() *
                 (pencil.t() - 2.0 * cert.t * pencil.s()) * cert.xi)
                    .value()
                    .real()) +
               cert.t * cert.t;
  return cert;
}

}  // namespace

Verdict decide_pencil(const HermitianMatrix& s, const HermitianMatrix& t,
                      const DecisionConfig& cfg) {
  cfg.validate();
  const Pencil pencil(s, t);
  Verdict verdict;

  // Global floor: Q(t) = (T - S^2) + (S - t)^2 >= T - S^2 for every t.
  const HermitianMatrix gap =
      HermitianMatrix::symmetrized(t.matrix() - s.matrix() * s.matrix());
  const double floor = min_eigenvalue(gap);
  ++verdict.evaluations;
  if (floor >= -kExactnessBand) {
    HoldsCertificate cert;
    cert.method = HoldsMethod::LoewnerFloor;
    cert.floor = floor;
    cert.lipschitz = 4.0 * operator_norm(s.matrix());
    verdict.outcome = Outcome::Holds;
    verdict.holds = std::move(cert);
    return verdict;
  }

  const EigenDecomposition eig_s = eig_hermitian(s);
  const double t_lo = eig_s.eigenvalues.minCoeff();
  const double t_hi = eig_s.eigenvalues.maxCoeff();
  const double lipschitz = 4.0 * std::max(std::abs(t_lo), std::abs(t_hi));

  // Initial uniform grid over the scan interval; every point covers a cell
  // of radius h/2 around it.
  std::vector<Cell> cells;
  const double width = t_hi - t_lo;
  if (width <= 1e-13 * std::max(1.0, std::abs(t_hi))) {
    cells.push_back({0.5 * (t_lo + t_hi), 0.0});
  } else {
    const int points = cfg.initial_grid_points;
    const double h = width / (points - 1);
    for (int i = 0; i < points; ++i) {
      cells.push_back({t_lo + i * h, 0.5 * h});
    }
  }

  double min_cleared_value = std::numeric_limits<double>::infinity();
  double min_cleared_step = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double most_negative = 0.0;
  double most_negative_t = 0.0;
  PencilEval most_negative_eval;

  for (int level = 0; level <= cfg.max_refinements; ++level) {
    std::vector<Cell> uncleared;
    for (const Cell& cell : cells) {
      const PencilEval eval = pencil.eval(cell.center, verdict.evaluations);
      if (eval.value < most_negative) {
        most_negative = eval.value;
        most_negative_t = cell.center;
        most_negative_eval = eval;
      }
      const double margin = eval.value - lipschitz * cell.half_width;
      if (eval.value >= lipschitz * cell.half_width &&
          (cell.half_width > 0.0 ? eval.value > 0.0 : eval.value >= 0.0)) {
        if (eval.value < min_cleared_value) {
          min_cleared_value = eval.value;
          min_cleared_step = 2.0 * cell.half_width;
        }
      } else {
        worst_margin = std::min(worst_margin, margin);
        uncleared.push_back(cell);
      }
    }

    if (most_negative < -kFailsEmission) {
      verdict.outcome = Outcome::Fails;
      verdict.fails = polish_fails(pencil, most_negative_t, most_negative_eval,
                                   verdict.evaluations);
      return verdict;
    }
    if (uncleared.empty()) {
      HoldsCertificate cert;
      cert.method = HoldsMethod::GridMargin;
      cert.grid_step = min_cleared_step;
      cert.lipschitz = lipschitz;
      cert.min_grid_value = min_cleared_value;
      verdict.outcome = Outcome::Holds;
      verdict.holds = std::move(cert);
      return verdict;
    }
    if (level == cfg.max_refinements) {
      UndecidedDiagnostics diag;
      diag.smallest_margin = worst_margin;
      diag.final_grid_step = 2.0 * uncleared.front().half_width;
      verdict.undecided = diag;
      break;
    }

    // Subdivide only the cells whose margin failed.
    std::vector<Cell> next;
    next.reserve(uncleared.size() * static_cast<std::size_t>(cfg.refinement_factor));
    for (const Cell& cell : uncleared) {
      const double child_half = cell.half_width / cfg.refinement_factor;
      if (child_half <= 0.0) {
        next.push_back(cell);
        continue;
      }
      for (int k = 0; k < cfg.refinement_factor; ++k) {
        const double center = cell.center - cell.half_width +
                              (2.0 * k + 1.0) * child_half;
        next.push_back({center, child_half});
      }
    }
    cells = std::move(next);
    worst_margin = std::numeric_limits<double>::infinity();
  }

  // Grid could not settle the question; try the factorization certificate
  // Z = S + iK with Z*Z ~= T, which handles boundary instances exactly.
  const FactorizationData factor =
      detail::factor_pencil_multistart(s, t, 60, 1e-13);
  const double residual_norm = operator_norm(
      t.matrix() - factor.z.adjoint() * factor.z);
  if (factor.hermitian_part_residual <= kExactnessBand &&
      residual_norm <= kExactnessBand * std::max(1.0, operator_norm(t.matrix()))) {
    HoldsCertificate cert;
    cert.method = HoldsMethod::Factorization;
    cert.floor = -residual_norm;
    cert.lipschitz = lipschitz;
    cert.factor = factor.z;
    verdict.outcome = Outcome::Holds;
    verdict.holds = std::move(cert);
    return verdict;
  }

  verdict.outcome = Outcome::Undecided;
  return verdict;
}

namespace {

void require_psd_input(const HermitianMatrix& m, double slack,
                       const char* name) {
  if (min_eigenvalue(m) < -slack) {
    throw NotPositiveSemidefiniteError(
        std::string(name) + ": eigenvalue below -" + std::to_string(slack));
  }
}

}  // namespace

Verdict check_order(const HermitianMatrix& a, const HermitianMatrix& b,
                    const DecisionConfig& cfg) {
  cfg.validate();
  require_psd_input(a, cfg.psd_slack, "check_order: A");
  require_psd_input(b, cfg.psd_slack, "check_order: B");
  const HermitianMatrix s = psd_sqrt(psd_clamp(a, cfg.psd_slack));
  return decide_pencil(s, b, cfg);
}

Verdict check_order_squared(const HermitianMatrix& a, const HermitianMatrix& b,
                            const DecisionConfig& cfg) {
  cfg.validate();
  require_psd_input(a, cfg.psd_slack, "check_order_squared: A");
  require_psd_input(b, cfg.psd_slack, "check_order_squared: B");
  return decide_pencil(psd_clamp(a, cfg.psd_slack), square(b), cfg);
}

Verdict brute_force_order(const HermitianMatrix& a, const HermitianMatrix& b,
                          long samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidConfigError("brute_force_order: samples >= 1");
  if (a.dim() != b.dim())
    throw InvalidConfigError("brute_force_order: dimension mismatch");
  const Index n = a.dim();
  const HermitianMatrix s = psd_sqrt(psd_clamp(a, 1e-9), 1e-9);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Verdict verdict;
  double best_violation = 0.0;
  Vector best_xi;

  const auto probe = [&](const Vector& raw) {
    Vector xi = raw;
    const double norm = xi.norm();
    if (norm <= 0.0) return;
    xi /= norm;
    const double s_form = (xi.adjoint() * s.matrix() * xi).value().real();
    const double b_form = (xi.adjoint() * b.matrix() * xi).value().real();
    const double violation = s_form * s_form - b_form;
    if (violation > best_violation) {
      best_violation = violation;
      best_xi = xi;
    }
  };

  for (const HermitianMatrix* m : {&s, &a, &b}) {
    const EigenDecomposition eig = eig_hermitian(*m);
    for (Index i = 0; i < n; ++i) probe(eig.eigenvectors.col(i));
  }
  for (long k = 0; k < samples; ++k) {
    Vector xi(n);
    for (Index i = 0; i < n; ++i) xi(i) = Complex(normal(rng), normal(rng));
    probe(xi);
  }

  if (best_violation > kFailsEmission) {
    FailsCertificate cert;
    cert.xi = best_xi;
    cert.t = (best_xi.adjoint() * s.matrix() * best_xi).value().real();
    cert.value =
        (best_xi.adjoint() * (b.matrix() - 2.0 * cert.t * s.matrix()) * best_xi)
            .value()
            .real() +
        cert.t * cert.t;
    verdict.outcome = Outcome::Fails;
    verdict.fails = std::move(cert);
  } else {
    verdict.outcome = Outcome::Undecided;
    UndecidedDiagnostics diag;
    diag.smallest_margin = -best_violation;
    diag.final_grid_step = 0.0;
    verdict.undecided = diag;
  }
  return verdict;
}

HalflineMinimum min_halfline(double q) {
  if (q < 0.0) throw DomainError("min_halfline: q must be >= 0");
  if (q == 0.0) return {0.0, 0.0, true};
  const double root = std::sqrt(q);
  return {root, root, false};
}

double quadratic_form_value(const HermitianMatrix& a, const HermitianMatrix& b,
                            bool squared, double t, const Vector& xi) {
  const HermitianMatrix s =
      squared ? psd_clamp(a, 1e-9) : psd_sqrt(psd_clamp(a, 1e-9), 1e-9);
  const HermitianMatrix big_t = squared ? square(b) : b;
  Vector unit = xi;
  const double norm = unit.norm();
  if (norm <= 0.0) throw DomainError("quadratic_form_value: zero vector");
  unit /= norm;
  return (unit.adjoint() * (big_t.matrix() - 2.0 * t * s.matrix()) * unit)
             .value()
             .real() +
         t * t;
}

}  // namespace jorder

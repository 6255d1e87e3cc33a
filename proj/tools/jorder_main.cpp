// jorder: batch front end for deciding, certifying and refuting the
// square-root Jensen relation between positive semidefinite matrices.
//
// Exit codes: 0 = holds / success, 1 = fails / non-convergence,
// 2 = undecided, 64+ = input error.

#include "jorder/instances.hpp"
#include "jorder/linalg.hpp"
#include "jorder/matrix_io.hpp"
#include "jorder/order.hpp"
#include "jorder/replication.hpp"
#include "jorder/scalar_bounds.hpp"
#include "jorder/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace jorder;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void emit_report(const json& report, const std::string& json_path) {
  if (json_path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(json_path);
  if (!out) throw IoError("cannot open report path " + json_path);
  out << report.dump(2) << '\n';
  std::cout << "report written to " << json_path << '\n';
}

json vector_to_json(const Vector& v) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

Vector vector_from_json(const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  Vector v(static_cast<Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    v(static_cast<Index>(i)) =
        Complex(re[i].get<double>(), im[i].get<double>());
  }
  return v;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    default:
      return "undecided";
  }
}

std::string method_name(HoldsMethod m) {
  switch (m) {
    case HoldsMethod::LoewnerFloor:
      return "loewner_floor";
    case HoldsMethod::GridMargin:
      return "grid_margin";
    default:
      return "factorization";
  }
}

json verdict_to_json(const Verdict& v) {
  json out;
  out["verdict"] = outcome_name(v.outcome);
  out["evaluations"] = v.evaluations;
  if (v.holds) {
    json cert;
    cert["method"] = method_name(v.holds->method);
    cert["lipschitz"] = v.holds->lipschitz;
    if (v.holds->method == HoldsMethod::GridMargin) {
      cert["grid_step"] = v.holds->grid_step;
      cert["min_grid_value"] = v.holds->min_grid_value;
    } else {
      cert["floor"] = v.holds->floor;
    }
    if (v.holds->method == HoldsMethod::Factorization) {
      cert["factor"] = matrix_to_json(v.holds->factor);
    }
    out["certificate"] = cert;
  }
  if (v.fails) {
    out["certificate"] = {{"t", v.fails->t},
                          {"value", v.fails->value},
                          {"xi", vector_to_json(v.fails->xi)}};
  }
  if (v.undecided) {
    out["diagnostics"] = {{"smallest_margin", v.undecided->smallest_margin},
                          {"final_grid_step", v.undecided->final_grid_step}};
  }
  return out;
}

int exit_code_for(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return kExitHolds;
    case Outcome::Fails:
      return kExitFails;
    default:
      return kExitUndecided;
  }
}

HermitianMatrix load_psd_input(const std::string& path) {
  return HermitianMatrix(load_matrix(path));
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string path_a, path_b, json_path;
  bool squared = false;
  DecisionConfig cfg;
};

int run_check(const CheckOptions& opt) {
  Stopwatch timer;
  const HermitianMatrix a = load_psd_input(opt.path_a);
  const HermitianMatrix b = load_psd_input(opt.path_b);
  const Verdict v = opt.squared ? check_order_squared(a, b, opt.cfg)
                                : check_order(a, b, opt.cfg);
  json report;
  report["command"] = "check";
  report["inputs"] = {{"a", opt.path_a},
                      {"b", opt.path_b},
                      {"squared", opt.squared}};
  report["config"] = {{"grid", opt.cfg.initial_grid_points},
                      {"refine_factor", opt.cfg.refinement_factor},
                      {"max_refinements", opt.cfg.max_refinements},
                      {"psd_slack", opt.cfg.psd_slack}};
  report["result"] = verdict_to_json(v);
  report["wall_time_s"] = timer.seconds();
  emit_report(report, opt.json_path);
  return exit_code_for(v.outcome);
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

struct WitnessOptions {
  std::string path_a, path_b, json_path;
  int max_iter = 5000;
  double tol = 1e-7;
};

int run_witness(const WitnessOptions& opt) {
  Stopwatch timer;
  const HermitianMatrix a = load_psd_input(opt.path_a);
  const HermitianMatrix b = load_psd_input(opt.path_b);
  const ContractionWitness w = find_contraction(a, b, opt.max_iter, opt.tol);
  json report;
  report["command"] = "witness";
  report["inputs"] = {{"a", opt.path_a},
                      {"b", opt.path_b},
                      {"max_iter", opt.max_iter},
                      {"tol", opt.tol}};
  report["result"] = {{"accepted", w.accepted},
                      {"equation_residual", w.equation_residual},
                      {"norm_excess", w.norm_excess},
                      {"iterations", w.iterations},
                      {"c", matrix_to_json(w.c)}};
  report["wall_time_s"] = timer.seconds();
  emit_report(report, opt.json_path);
  return w.accepted ? kExitHolds : kExitFails;
}

// ---------------------------------------------------------------------------
// example
// ---------------------------------------------------------------------------

int run_example(const std::string& dir, const std::string& json_path) {
  Stopwatch timer;
  std::filesystem::create_directories(dir);
  const CanonicalTriple t = canonical_triple();
  const std::filesystem::path base(dir);

  json files = json::object();
  const auto emit = [&](const char* name, const Matrix& m) {
    const auto path = base / (std::string(name) + ".json");
    save_matrix(path, m);
    files[name] = path.string();
  };
  emit("A", t.a.matrix());
  emit("B", t.b.matrix());
  emit("C", t.c.matrix());
  emit("X", t.x);
  emit("Y", t.y);
  emit("A2", square(t.a).matrix());
  emit("B2", square(t.b).matrix());
  emit("C2", square(t.c).matrix());

  json report;
  report["command"] = "example";
  report["inputs"] = {{"emit", dir}};
  report["result"] = {{"files", files}};
  report["wall_time_s"] = timer.seconds();
  emit_report(report, json_path);
  return kExitHolds;
}

// ---------------------------------------------------------------------------
// verify-theorem
// ---------------------------------------------------------------------------

struct TheoremOptions {
  int dim = 3;
  int trials = 200;
  std::uint64_t seed = 1;
  double min_gap = 0.1;
  bool plant_equal = false;
  std::string json_path;
};

int run_verify_theorem(const TheoremOptions& opt) {
  Stopwatch timer;
  json trial_reports = json::array();
  int violations = 0;

  for (int trial = 0; trial < opt.trials; ++trial) {
    const std::uint64_t base =
        opt.seed + 2654435761ULL * static_cast<std::uint64_t>(trial);
    HermitianMatrix a = random_psd(opt.dim, base * 2 + 1, 0.2, 2.0);
    HermitianMatrix b = random_psd(opt.dim, base * 2 + 2, 0.2, 2.0);
    const bool planted = opt.plant_equal && trial == 0;
    if (planted) {
      b = a;
    } else {
      int redraw = 0;
      while (operator_norm(a.matrix() - b.matrix()) < opt.min_gap &&
             redraw < 100) {
        b = random_psd(opt.dim,
                       base * 2 + 1000 + static_cast<std::uint64_t>(redraw),
                       0.2, 2.0);
        ++redraw;
      }
    }
    const double gap = operator_norm(a.matrix() - b.matrix());
    const Verdict ab = check_order_squared(a, b);
    const Verdict ba = check_order_squared(b, a);
    const bool violation = !planted && gap >= opt.min_gap &&
                           ab.outcome == Outcome::Holds &&
                           ba.outcome == Outcome::Holds;
    if (violation) ++violations;
    trial_reports.push_back({{"trial", trial},
                             {"gap", gap},
                             {"ab", outcome_name(ab.outcome)},
                             {"ba", outcome_name(ba.outcome)},
                             {"planted_equal", planted},
                             {"violation", violation}});
  }

  json report;
  report["command"] = "verify-theorem";
  report["inputs"] = {{"dim", opt.dim},
                      {"trials", opt.trials},
                      {"seed", opt.seed},
                      {"min_gap", opt.min_gap},
                      {"plant_equal", opt.plant_equal}};
  report["result"] = {{"violations", violations}, {"trials", trial_reports}};
  report["wall_time_s"] = timer.seconds();
  emit_report(report, opt.json_path);
  return violations == 0 ? kExitHolds : kExitFails;
}

// ---------------------------------------------------------------------------
// replicate
// ---------------------------------------------------------------------------

struct ReplicateOptions {
  std::string lemma;
  double c = 1.0;
  double eps = 0.1;
  int grid_points = 257;
  int n = 4;
  std::vector<int> n_list = {4, 16, 64, 256};
  double d = 0.0;  // 0 = derive via find_d
  std::string path_a, path_b;
  int dim = 4;
  std::uint64_t seed = 1;
  std::string json_path;
};

HermitianMatrix default_window_instance(double c, double eps, int dim) {
  // Diagonal spectrum at fractions {1,7,13,17}/18 of the window; for
  // c=1, eps=0.1 this is diag(1.15, 1.45, 1.75, 1.95). The fractions avoid
  // partition edges for n in {4, 16, 64, 256}.
  const double lo = c + eps;
  const double span = c - eps;
  const double fracs[] = {1.0 / 18, 7.0 / 18, 13.0 / 18, 17.0 / 18};
  RealVector d(dim);
  for (int i = 0; i < dim; ++i) {
    d(i) = lo + fracs[i % 4] * span + (i / 4) * 1e-3;
  }
  return HermitianMatrix::from_diagonal(d);
}

int run_replicate(const ReplicateOptions& opt) {
  Stopwatch timer;
  json report;
  report["command"] = "replicate";
  report["inputs"] = {{"lemma", opt.lemma}, {"c", opt.c}, {"eps", opt.eps}};
  bool ok = false;

  if (opt.lemma == "2.3") {
    const ScalarBoundParams params = find_d(opt.c, opt.eps, opt.grid_points);
    const int points = opt.grid_points;
    const double lo = opt.c + opt.eps;
    const double step = (2.0 * opt.c - lo) / (points - 1);
    double min_k = 1e300, min_radicand = 1e300;
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j < points; ++j) {
        const double t = lo + i * step;
        const double lam = lo + j * step;
        min_k = std::min(min_k, k_function(t, lam, params));
        min_radicand = std::min(min_radicand, 2.0 * t * lam - t * t);
      }
    }
    ok = min_k >= -1e-12 &&
         min_radicand >= positivity_floor(opt.c, opt.eps) - 1e-12;
    report["result"] = {{"d", params.d},
                        {"lattice_min_k", min_k},
                        {"lattice_min_radicand", min_radicand},
                        {"positivity_floor", positivity_floor(opt.c, opt.eps)},
                        {"passed", ok}};
  } else if (opt.lemma == "2.4") {
    const HermitianMatrix a =
        opt.path_a.empty() ? default_window_instance(opt.c, opt.eps, opt.dim)
                           : load_psd_input(opt.path_a);
    const HermitianMatrix b =
        opt.path_b.empty() ? a : load_psd_input(opt.path_b);
    const double d = opt.d > 0.0 ? opt.d : find_d(opt.c, opt.eps).d;

    const PartitionReport part =
        partition_pipeline(a, b, opt.c, opt.eps, opt.n, d);
    json per_index = json::array();
    for (const auto& e : part.per_index) {
      per_index.push_back({{"t", e.t},
                           {"deviation", e.deviation},
                           {"deviation_bound", e.deviation_bound},
                           {"coupling_sq", e.coupling_sq},
                           {"coupling_bound", e.coupling_bound},
                           {"coupling_ok", e.coupling_ok}});
    }
    json decay = json::array();
    for (const auto& point :
         bound_decay_study(a, b, opt.c, opt.eps, d, opt.n_list)) {
      decay.push_back({{"n", point.n}, {"final_bound", point.final_bound}});
    }
    ok = part.deviation_ok && part.final_bound_dominates;
    report["result"] = {{"d", d},
                        {"n", part.n},
                        {"per_index", per_index},
                        {"deviation_ok", part.deviation_ok},
                        {"aggregate_coupling_sq", part.aggregate_coupling_sq},
                        {"aggregate_bound", part.aggregate_bound},
                        {"aggregate_ok", part.aggregate_ok},
                        {"final_bound", part.final_bound},
                        {"actual_gap", part.actual_gap},
                        {"final_bound_dominates", part.final_bound_dominates},
                        {"premise_passed", part.premise_status.passed},
                        {"decay", decay},
                        {"passed", ok}};
  } else if (opt.lemma == "2.6") {
    // constructed singular instance: C = P + (1-P) D (1-P)
    const Index n = opt.dim;
    const GeneralMatrix u = random_unitary(n, opt.seed);
    const Index rank = std::max<Index>(1, n / 2);
    RealVector diag = RealVector::Zero(n);
    for (Index i = 0; i < rank; ++i) {
      diag(i) = 1.0 + 0.25 * static_cast<double>(i);
    }
    const HermitianMatrix a = HermitianMatrix::symmetrized(
        u * diag.cast<Complex>().asDiagonal() * u.adjoint());
    Matrix p = Matrix::Zero(n, n);
    for (Index i = 0; i < rank; ++i) p += u.col(i) * u.col(i).adjoint();
    const Matrix perp = Matrix::Identity(n, n) - p;
    const GeneralMatrix contraction = random_contraction(n, opt.seed + 1);
    const GeneralMatrix c = p + perp * contraction * perp;

    const RangeFixedPointResult r = range_fixed_point_check(c, a);
    ok = r.cp_minus_p <= 1e-7 && r.c_minus_id_times_a <= 1e-7;
    report["result"] = {{"cp_minus_p", r.cp_minus_p},
                        {"c_minus_id_times_a", r.c_minus_id_times_a},
                        {"passed", ok}};
  } else {
    std::cerr << "error: --lemma must be one of 2.3, 2.4, 2.6\n";
    return kExitUsage;
  }

  report["wall_time_s"] = timer.seconds();
  emit_report(report, opt.json_path);
  return ok ? kExitHolds : kExitFails;
}

// ---------------------------------------------------------------------------
// recheck
// ---------------------------------------------------------------------------

int run_recheck(const std::string& report_path) {
  std::ifstream in(report_path);
  if (!in) throw IoError("cannot open report " + report_path);
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw IoError(std::string("report parse error: ") + e.what());
  }
  const std::string command = report.at("command").get<std::string>();

  if (command == "check") {
    const auto& inputs = report.at("inputs");
    const HermitianMatrix a = load_psd_input(inputs.at("a").get<std::string>());
    const HermitianMatrix b = load_psd_input(inputs.at("b").get<std::string>());
    const bool squared = inputs.at("squared").get<bool>();
    const auto& result = report.at("result");
    const std::string verdict = result.at("verdict").get<std::string>();

    if (verdict == "fails") {
      const auto& cert = result.at("certificate");
      const double t = cert.at("t").get<double>();
      const Vector xi = vector_from_json(cert.at("xi"));
      const double value = quadratic_form_value(a, b, squared, t, xi);
      const bool ok = value < -1e-12 &&
                      std::abs(value - cert.at("value").get<double>()) <=
                          1e-7 * std::max(1.0, std::abs(value));
      std::cout << "fails certificate re-evaluates to " << value
                << (ok ? " (valid)" : " (INVALID)") << '\n';
      return ok ? kExitHolds : kExitFails;
    }
    if (verdict == "holds") {
      const auto& cert = result.at("certificate");
      const std::string method = cert.at("method").get<std::string>();
      const HermitianMatrix s =
          squared ? psd_clamp(a, 1e-9) : psd_sqrt(psd_clamp(a, 1e-9), 1e-9);
      const HermitianMatrix target = squared ? square(b) : b;
      if (method == "loewner_floor") {
        const double floor = min_eigenvalue(HermitianMatrix::symmetrized(
            target.matrix() - s.matrix() * s.matrix()));
        const bool ok = floor >= -1e-12;
        std::cout << "loewner floor re-evaluates to " << floor
                  << (ok ? " (valid)" : " (INVALID)") << '\n';
        return ok ? kExitHolds : kExitFails;
      }
      if (method == "factorization") {
        const Matrix z = matrix_from_json(cert.at("factor"));
        const double herm_res = (0.5 * (z + z.adjoint()) - s.matrix()).norm();
        const double mod_res = operator_norm(target.matrix() - z.adjoint() * z);
        const bool ok =
            herm_res <= 1e-12 &&
            mod_res <= 1e-12 * std::max(1.0, operator_norm(target.matrix()));
        std::cout << "factorization residuals " << herm_res << ", " << mod_res
                  << (ok ? " (valid)" : " (INVALID)") << '\n';
        return ok ? kExitHolds : kExitFails;
      }
      // grid margin certificates re-validate by deterministic re-run
      DecisionConfig cfg;
      const auto& jcfg = report.at("config");
      cfg.initial_grid_points = jcfg.at("grid").get<int>();
      cfg.refinement_factor = jcfg.at("refine_factor").get<int>();
      cfg.max_refinements = jcfg.at("max_refinements").get<int>();
      cfg.psd_slack = jcfg.at("psd_slack").get<double>();
      const Verdict again =
          squared ? check_order_squared(a, b, cfg) : check_order(a, b, cfg);
      const bool ok = again.outcome == Outcome::Holds && again.holds &&
                      again.holds->method == HoldsMethod::GridMargin &&
                      std::abs(again.holds->min_grid_value -
                               cert.at("min_grid_value").get<double>()) <= 1e-9;
      std::cout << "grid re-run " << (ok ? "matches (valid)" : "(INVALID)")
                << '\n';
      return ok ? kExitHolds : kExitFails;
    }
    // undecided: deterministic re-run must agree
    const Verdict again =
        squared ? check_order_squared(a, b) : check_order(a, b);
    const bool ok = again.outcome == Outcome::Undecided;
    std::cout << "undecided re-run " << (ok ? "matches (valid)" : "(INVALID)")
              << '\n';
    return ok ? kExitHolds : kExitFails;
  }

  if (command == "witness") {
    const auto& inputs = report.at("inputs");
    const HermitianMatrix a = load_psd_input(inputs.at("a").get<std::string>());
    const HermitianMatrix b = load_psd_input(inputs.at("b").get<std::string>());
    const auto& result = report.at("result");
    const GeneralMatrix c = matrix_from_json(result.at("c"));
    const ContractionWitness w = verify_witness(c, a, b);
    const bool ok = w.accepted == result.at("accepted").get<bool>() &&
                    std::abs(w.equation_residual -
                             result.at("equation_residual").get<double>()) <=
                        1e-9 * std::max(1.0, w.equation_residual);
    std::cout << "witness re-verification "
              << (ok ? "matches (valid)" : "(INVALID)") << '\n';
    return ok ? kExitHolds : kExitFails;
  }

  throw IoError("recheck: reports of command '" + command +
                "' carry no certificate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jorder: decide and certify the square-root Jensen relation "
      "A <| B (i.e. <A^{1/2} x, x> <= <B x, x>^{1/2} for all unit x) "
      "between positive semidefinite matrices"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand(
      "check", "decide A <| B (or A^2 <| B^2 with --squared)");
  check->add_option("a", check_opt.path_a, "matrix file for A")->required();
  check->add_option("b", check_opt.path_b, "matrix file for B")->required();
  check->add_flag("--squared", check_opt.squared,
                  "decide the squared relation A^2 <| B^2");
  check->add_option("--grid", check_opt.cfg.initial_grid_points,
                    "initial scan grid points")
      ->envname("JORDER_GRID");
  check->add_option("--refine", check_opt.cfg.max_refinements,
                    "maximum adaptive refinements")
      ->envname("JORDER_REFINE");
  check->add_option("--refine-factor", check_opt.cfg.refinement_factor,
                    "cell subdivision factor")
      ->envname("JORDER_REFINE_FACTOR");
  check->add_option("--slack", check_opt.cfg.psd_slack,
                    "input PSD acceptance tolerance")
      ->envname("JORDER_SLACK");
  check->add_option("--json", check_opt.json_path, "write the report here");

  WitnessOptions witness_opt;
  auto* witness = app.add_subcommand(
      "witness", "search for a contraction C with C B + B C* = 2A");
  witness->add_option("a", witness_opt.path_a, "matrix file for A")->required();
  witness->add_option("b", witness_opt.path_b, "matrix file for B")->required();
  witness->add_option("--max-iter", witness_opt.max_iter,
                      "projection iteration cap")
      ->envname("JORDER_MAXITER");
  witness->add_option("--tol", witness_opt.tol, "acceptance tolerance")
      ->envname("JORDER_TOL");
  witness->add_option("--json", witness_opt.json_path,
                      "write the report here");

  std::string example_dir = ".";
  std::string example_json;
  auto* example = app.add_subcommand(
      "example", "emit the built-in non-transitive triple as matrix files");
  example->add_option("--emit", example_dir, "output directory");
  example->add_option("--json", example_json, "write the report here");

  TheoremOptions theorem_opt;
  auto* theorem = app.add_subcommand(
      "verify-theorem",
      "sample separated invertible pairs and confirm the relation never "
      "holds in both directions");
  theorem->add_option("--dim", theorem_opt.dim, "matrix dimension");
  theorem->add_option("--trials", theorem_opt.trials, "number of pairs");
  theorem->add_option("--seed", theorem_opt.seed, "base seed")
      ->envname("JORDER_SEED");
  theorem->add_option("--min-gap", theorem_opt.min_gap,
                      "required operator-norm separation");
  theorem->add_flag("--plant-equal", theorem_opt.plant_equal,
                    "replace trial 0 with an equal pair (harness check)");
  theorem->add_option("--json", theorem_opt.json_path,
                      "write the report here");

  ReplicateOptions rep_opt;
  auto* replicate = app.add_subcommand(
      "replicate",
      "run a named study: 2.3 = scalar bound constant, 2.4 = spectral "
      "partition norm bound, 2.6 = range fixed point");
  replicate->add_option("--lemma", rep_opt.lemma, "study id: 2.3, 2.4 or 2.6")
      ->required();
  replicate->add_option("--c", rep_opt.c, "window parameter c");
  replicate->add_option("--eps", rep_opt.eps, "window parameter eps");
  replicate->add_option("--grid", rep_opt.grid_points,
                        "lattice points per axis (study 2.3)");
  replicate->add_option("--n", rep_opt.n, "partition count (study 2.4)");
  replicate->add_option("--n-list", rep_opt.n_list,
                        "partition counts for the decay series (study 2.4)");
  replicate->add_option(
      "--d", rep_opt.d,
      "bound constant d (default: derived via the 2.3 study)");
  replicate->add_option("--matrix-a", rep_opt.path_a,
                        "matrix file for A (study 2.4)");
  replicate->add_option("--matrix-b", rep_opt.path_b,
                        "matrix file for B (study 2.4)");
  replicate->add_option("--dim", rep_opt.dim, "instance dimension");
  replicate->add_option("--seed", rep_opt.seed, "instance seed")
      ->envname("JORDER_SEED");
  replicate->add_option("--json", rep_opt.json_path, "write the report here");

  std::string recheck_path;
  auto* recheck = app.add_subcommand(
      "recheck", "re-validate the certificate inside a report file");
  recheck->add_option("report", recheck_path, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(check_opt);
    if (*witness) return run_witness(witness_opt);
    if (*example) return run_example(example_dir, example_json);
    if (*theorem) return run_verify_theorem(theorem_opt);
    if (*replicate) return run_replicate(rep_opt);
    if (*recheck) return run_recheck(recheck_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

#include "normopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normopt/attainment.hpp"
#include "normopt/lineability.hpp"
#include "normopt/norm_solver.hpp"
#include "normopt/operators.hpp"
#include "normopt/rng.hpp"
#include "normopt/sequence_space.hpp"

namespace normopt {

namespace {

struct Suite {
  SuiteResult result;

  void check(const std::string& name, bool pass, double measured) {
    std::ostringstream detail;
    detail.precision(6);
    detail << "measured " << measured;
    result.checks.push_back({name, pass, detail.str()});
  }
  void check(const std::string& name, bool pass, const std::string& detail) {
    result.checks.push_back({name, pass, detail});
  }
};

OperatorSpec half_harmonic_diag(Exponent p, Exponent q) {
  // entries (n+1)/(2n): non-increasing from 1, bounded below by 1/2
  std::vector<double> entries(512);
  for (std::size_t n = 1; n <= entries.size(); ++n) {
    entries[n - 1] = static_cast<double>(n + 1) / (2.0 * n);
  }
  return OperatorSpec::diagonal(DiagonalRule::Explicit, p, q,
                                std::move(entries));
}

MaximizingTrace identity_counterexample_trace(int steps) {
  // u^n = 2^(-1/2) e_1 + 2^(-1/2) e_n: a maximizing sequence for the
  // identity at p = q = 2 with no norm-convergent subsequence.
  MaximizingTrace trace;
  trace.p = Exponent(2);
  trace.q = Exponent(2);
  const double c = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < steps; ++i) {
    std::size_t n = static_cast<std::size_t>(i + 2);
    SeqVec u;
    u.set_coord(1, c);
    u.set_coord(n, c);
    trace.steps.push_back({n, std::move(u), 1.0});
  }
  trace.weak_limit_candidate = SeqVec{};
  return trace;
}

SuiteResult scalar_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "scalar";
  Rng rng(seed);

  // phi_2 is identically 2 away from X = 1.
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    double X = rng.range(-100.0, 100.0);
    if (std::fabs(X - 1.0) < 1e-6) continue;
    worst = std::max(worst, std::fabs(phi(Exponent(2), X) - 2.0));
  }
  s.check("phi_2 identically 2", worst <= 1e-12, worst);

  // |phi_r - r| < 0.01 beyond a bisected threshold X0.
  bool asym_ok = true;
  for (int trial = 0; trial < 4 && asym_ok; ++trial) {
    double r = 1.0 + rng.range(0.001, 4.0);
    auto tail_ok = [&](double X0) {
      for (int i = 0; i <= 64; ++i) {
        double X = X0 * std::pow(1e6 / X0, i / 64.0);
        if (std::fabs(phi(Exponent(r), X) - r) >= 0.005) return false;
        if (std::fabs(phi(Exponent(r), -X) - r) >= 0.005) return false;
      }
      return true;
    };
    double hi = 4.0;
    while (hi < 1e9 && !tail_ok(hi)) hi *= 2.0;
    if (hi >= 1e9) {
      asym_ok = false;
      break;
    }
    double lo = hi / 2.0;
    for (int b = 0; b < 30; ++b) {
      double mid = 0.5 * (lo + hi);
      (tail_ok(mid) ? hi : lo) = mid;
    }
    for (int i = 0; i <= 128; ++i) {
      double X = hi * std::pow(1e6 / hi, i / 128.0);
      if (std::fabs(phi(Exponent(r), X) - r) >= 0.01) asym_ok = false;
      if (std::fabs(phi(Exponent(r), -X) - r) >= 0.01) asym_ok = false;
    }
  }
  s.check("phi_r tends to r (bisected X0)", asym_ok,
          asym_ok ? "threshold found for all sampled r" : "tail bound failed");

  // The splitting inequality with returned constants, on a dense grid.
  double worst_violation = 0;
  for (double r : {1.5, 2.0, 3.0, 4.0}) {
    for (double eps : {0.01, 0.1, 0.5}) {
      SplittingConstants c = splitting_bound_constants(Exponent(r), eps);
      for (int i = 0; i <= 10000; ++i) {
        double X = -1000.0 + 2000.0 * i / 10000.0;
        double lhs = std::fabs(std::pow(std::fabs(X), r) -
                               std::pow(std::fabs(X - 1.0), r) - 1.0);
        double rhs =
            c.C * std::pow(std::fabs(X - 1.0), r - 1.0) + c.delta;
        worst_violation = std::max(worst_violation, lhs - rhs);
      }
    }
  }
  s.check("splitting inequality on grid", worst_violation <= 1e-9,
          worst_violation);

  // Concavity inequality on random admissible triples.
  bool concave_ok = true;
  for (int i = 0; i < 100000 && concave_ok; ++i) {
    concave_ok = concavity_check(rng.range(0.0, 100.0), rng.range(0.0, 100.0),
                                 rng.uniform());
  }
  s.check("concavity inequality, 1e5 triples", concave_ok,
          concave_ok ? "all hold" : "violation found");

  // Interpolation bound on random vectors.
  double worst_interp = -1;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> xs(1 + rng.below(12));
    for (double& v : xs) v = rng.symmetric() * 3.0;
    SeqVec x{xs};
    double p = 1.0 + rng.range(0.0, 3.0);
    double eps = rng.range(0.01, 3.0);
    InterpolationBound b = interpolation_bound(x, Exponent(p), eps);
    worst_interp = std::max(worst_interp, b.lhs - b.rhs);
  }
  s.check("interpolation bound lhs <= rhs", worst_interp <= 1e-12,
          worst_interp);

  // Duality-map consistency <J_r(y), y> = ||y||_r^r.
  double worst_dual = 0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> ys(1 + rng.below(10));
    for (double& v : ys) v = rng.symmetric() * 2.0;
    SeqVec y{ys};
    double r = 1.0 + rng.range(0.0, 4.0);
    double lhs = inner(duality_map(y, Exponent(r)), y);
    double rhs = std::pow(norm(y, Exponent(r)), r);
    worst_dual = std::max(worst_dual,
                          std::fabs(lhs - rhs) / std::max(1.0, rhs));
  }
  s.check("duality map consistency", worst_dual <= 1e-10, worst_dual);

  // Dichotomy inequality: strict inside, equality at the ends.
  bool dich_ok = true;
  double min_dip = 1;
  for (auto [p, q] : std::vector<std::pair<double, double>>{
           {1.5, 2.0}, {2.0, 3.0}, {2.0, 4.0}}) {
    for (int i = 1; i <= 999; ++i) {
      double t = i / 1000.0;
      auto [rhs, forces] = scalar_dichotomy(t, Exponent(p), Exponent(q));
      if (rhs >= 1.0 || forces) dich_ok = false;
      min_dip = std::min(min_dip, rhs);
    }
    for (double t : {0.0, 1.0}) {
      auto [rhs, forces] = scalar_dichotomy(t, Exponent(p), Exponent(q));
      if (std::fabs(rhs - 1.0) > 1e-12 || !forces) dich_ok = false;
    }
  }
  s.check("scalar dichotomy strict inside, tight at ends",
          dich_ok && min_dip < 1.0 - 1e-3, min_dip);

  // Rearrangement preserves norms and is idempotent.
  double worst_rearr = 0;
  bool idem = true;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> xs(1 + rng.below(10));
    for (double& v : xs) v = rng.symmetric() * 2.0;
    SeqVec x{xs};
    SeqVec sx = rearrange(x);
    idem = idem && rearrange(sx) == sx;
    for (double r : {1.0, 1.5, 2.0, 4.0}) {
      worst_rearr = std::max(
          worst_rearr,
          std::fabs(norm(sx, Exponent(r)) - norm(x, Exponent(r))));
    }
  }
  s.check("rearrangement norm-preserving and idempotent",
          idem && worst_rearr <= 1e-12, worst_rearr);

  return s.result;
}

SuiteResult splitting_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "splitting";
  Rng rng(seed);

  // Disjoint-support synthetic traces: both residuals vanish exactly.
  OperatorSpec id = OperatorSpec::dense(DenseMatrix::identity(64),
                                        Exponent(2), Exponent(2));
  double worst_q = 0, worst_p = 0;
  for (int i = 0; i < 200; ++i) {
    SeqVec u;
    u.set_coord(1, rng.symmetric());
    u.set_coord(2, rng.symmetric());
    std::size_t far = 10 + rng.below(40);
    double delta = rng.symmetric();
    SeqVec v = u;
    v.set_coord(far, delta);
    worst_q = std::max(worst_q,
                       splitting_residual_q(id, u, v, Exponent(2)));
    double un = norm(u, Exponent(2));
    if (un < 0.99) {
      SeqVec w = u;
      double tail = std::sqrt(1.0 - un * un);
      w.set_coord(far, tail);
      worst_p = std::max(worst_p, splitting_residual_p(u, w, Exponent(2)));
    }
  }
  s.check("disjoint synthetic residual (q side)", worst_q <= 1e-12, worst_q);
  s.check("disjoint synthetic residual (p side)", worst_p <= 1e-12, worst_p);

  // Residuals along the canonical escaping trace.
  DiagnoseConfig cfg;
  cfg.solver.seed = seed;
  DiagnoseOutcome novo = diagnose_with_trace(op_novo1(), cfg);
  double final_resid =
      novo.report.splitting_residuals.empty()
          ? 1.0
          : novo.report.splitting_residuals.back();
  s.check("novo1 trace residual at final rung", final_resid <= 1e-6,
          final_resid);

  // Cross term vanishes when the increment misses the support.
  SeqVec Tu = SeqVec::unit(1);
  SeqVec Tv = SeqVec::unit(1);
  Tv.set_coord(2, 0.1);
  double ct = cross_term(Tu, Tv, Exponent(2));
  s.check("cross term on disjoint increment", ct == 0.0, ct);

  return s.result;
}

SuiteResult precompact_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "precompact";

  SolverConfig cfg;
  cfg.seed = seed;
  OperatorSpec attaining = op_reciprocal(Exponent(2), Exponent(4));
  MaximizingTrace trace = build_maximizing_sequence(attaining, cfg);
  PrecompactnessResult pr = precompactness_check(attaining, trace);
  s.check("attaining diagonal p=2,q=4 tail gap", pr.max_tail_gap < 1e-6,
          pr.max_tail_gap);

  OperatorSpec id = OperatorSpec::dense(DenseMatrix::identity(8),
                                        Exponent(2), Exponent(2));
  PrecompactnessResult bad =
      precompactness_check(id, identity_counterexample_trace(6));
  s.check("identity p=q counterexample gap = 1",
          std::fabs(bad.max_tail_gap - 1.0) <= 1e-10, bad.max_tail_gap);

  return s.result;
}

SuiteResult monotone_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "monotone";

  MonotoneCheckResult rec = monotone_check(op_reciprocal(), Exponent(2),
                                           Exponent(2), 64, seed);
  s.check("reciprocal diagonal is monotone",
          rec.is_monotone_on_samples && rec.column_condition,
          rec.is_monotone_on_samples ? "samples ok" : "sample failed");

  MonotoneCheckResult nv =
      monotone_check(op_novo1(), Exponent(2), Exponent(2), 64, seed);
  s.check("novo1 fails the column condition", !nv.column_condition,
          nv.column_condition ? "unexpectedly passed" : "fails as expected");

  DiagnoseConfig cfg;
  cfg.solver.seed = seed;
  bool family_ok = true;
  std::string detail = "attains";
  std::vector<OperatorSpec> bundle = {
      op_reciprocal(Exponent(2), Exponent(4)),
      half_harmonic_diag(Exponent(2), Exponent(4))};
  for (const auto& T : bundle) {
    AttainmentReport rep =
        theorem_monotone_verify(T, Exponent(2), Exponent(4), 2.0, cfg);
    if (rep.verdict != Verdict::Attains) {
      family_ok = false;
      detail = "verdict " + verdict_name(rep.verdict);
    }
  }
  s.check("monotone family attains at (2,4,eps=2)", family_ok, detail);

  return s.result;
}

SuiteResult blocks_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "blocks";

  DiagnoseConfig cfg;
  cfg.solver.seed = seed;
  DiagnoseOutcome novo = diagnose_with_trace(op_novo1(), cfg);
  BlockExtraction blocks =
      block_extraction(op_novo1(), novo.trace, 1e-9, 100, seed);
  s.check("novo1 blocks: l_p isometry defect",
          blocks.isometry_defect < 1e-10, blocks.isometry_defect);
  s.check("novo1 blocks: image equivalence defect",
          blocks.image_equivalence_defect < 1e-10,
          blocks.image_equivalence_defect);
  s.check("novo1 image constants inside [1/2, 1]",
          blocks.image_constant_lo >= 0.5 && blocks.image_constant_hi <= 1.0,
          blocks.image_constant_lo);

  return s.result;
}

SuiteResult lineability_suite(std::uint64_t seed) {
  Suite s;
  s.result.suite = "lineability";
  Partition P = dyadic_partition();

  // Attaining side: rank-one base attaining at e_1.
  OperatorSpec rank_one = OperatorSpec::dense(
      DenseMatrix(std::vector<std::vector<double>>{{1.0}}), Exponent(2),
      Exponent(2));
  SeqVec x0 = SeqVec::unit(1);
  auto family = build_attaining_family(rank_one, x0, 4, P);
  FamilyReport att = verify_span_attains(family, x0, 32, seed);
  s.check("attaining family: additivity defect",
          att.additivity_defect < 1e-10, att.additivity_defect);
  s.check("attaining family: every combo attains at x0", att.all_attain_at_x0,
          att.norm_match_defect);
  s.check("attaining family: independent", att.independence_ok,
          att.independence_ok ? "witnesses found" : "no witness");

  // Non-attaining side: interleaved copies of novo1.
  auto bad_family = build_nonattaining_family(op_novo1(), 4, P);
  FamilyReport non = verify_span_nonattaining(bad_family, 16, 16, seed);
  s.check("non-attaining family: additivity defect",
          non.additivity_defect < 1e-10, non.additivity_defect);
  s.check("non-attaining family: strict gap on samples",
          non.none_attain && non.min_strict_gap > 0, non.min_strict_gap);
  s.check("non-attaining family: near-attainment sequence",
          non.near_attainment_shortfall <= 1e-9,
          non.near_attainment_shortfall);
  s.check("non-attaining family: independent", non.independence_ok,
          non.independence_ok ? "witnesses found" : "no witness");

  // Interleaving preserves ladder norms.
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.ladder = {2, 4, 8, 16, 32};
  double base_norm = ladder_norm(op_novo1(), cfg).overall.value;
  double worst = 0;
  for (const auto& member : bad_family) {
    double v = ladder_norm(member, cfg).overall.value;
    worst = std::max(worst, std::fabs(v - base_norm));
  }
  s.check("interleaving preserves ladder norms", worst < 1e-8, worst);

  return s.result;
}

}  // namespace

bool SuiteResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> suite_names() {
  return {"scalar", "splitting", "precompact", "monotone", "blocks",
          "lineability"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "scalar") return scalar_suite(seed);
  if (name == "splitting") return splitting_suite(seed);
  if (name == "precompact") return precompact_suite(seed);
  if (name == "monotone") return monotone_suite(seed);
  if (name == "blocks") return blocks_suite(seed);
  if (name == "lineability") return lineability_suite(seed);
  throw std::invalid_argument("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_suites(const std::string& name,
                                    std::uint64_t seed) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
  } else {
    out.push_back(run_suite(name, seed));
  }
  return out;
}

}  // namespace normopt

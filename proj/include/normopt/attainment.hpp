#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normopt/norm_solver.hpp"
#include "normopt/operators.hpp"
#include "normopt/sequence_space.hpp"

namespace normopt {

struct TraceStep {
  std::size_t section = 0;
  SeqVec certificate;  // unit in l_p, sign-normalized
  double value = 0;    // ||T certificate||_q
};

/// Ladder certificates read as a finite stand-in for a maximizing sequence.
/// The weak-limit candidate is the coordinatewise limit estimate: average of
/// the last three certificates, keeping only coordinates that clear the
/// zeroing threshold in every one of them (a coordinate carried by a single
/// escaping certificate is transient, not a limit).
struct MaximizingTrace {
  std::vector<TraceStep> steps;
  SeqVec weak_limit_candidate;
  Exponent p{2};
  Exponent q{2};
};

enum class Verdict { Attains, DoesNotAttain, Inconclusive };

std::string verdict_name(Verdict v);

struct AttainmentReport {
  Verdict verdict = Verdict::Inconclusive;
  double norm_value = 0;
  std::optional<SeqVec> attainer;  // unit in l_p when verdict == Attains
  /// Max early-coordinate magnitude over the late certificates.
  double weak_null_score = 0;
  /// Splitting residual per trace step against the weak-limit candidate.
  std::vector<double> splitting_residuals;
  /// Margin by which the verdict's defining inequality held: attainer value
  /// minus (norm - tol) for Attains, norm minus the best early canonical
  /// value for DoesNotAttain, 0 for Inconclusive.
  double dichotomy_margin = 0;
};

/// Knobs for diagnose and friends. window/tau define the declared
/// finite-section surrogate for "weakly null": late certificates must have
/// all of their first `window` coordinates below tau.
struct DiagnoseConfig {
  SolverConfig solver;
  int window = 32;
  double tau = 1e-3;
  double attain_tol = 1e-6;
  double cauchy_tol = 1e-6;
};

/// One certificate per ladder rung plus the weak-limit candidate.
MaximizingTrace build_maximizing_sequence(const OperatorSpec& T,
                                          const SolverConfig& cfg,
                                          double tau = 1e-3);

/// score = max over the last 3 certificates of max_{i <= window} |coord_i|;
/// weakly-null-like when score < tau. Throws on an empty trace.
std::pair<bool, double> weak_null_proxy(const MaximizingTrace& trace,
                                        int window, double tau);

/// | ||Tv||_q^q - ||Tu||_q^q - ||T(v-u)||_q^q |, the q-side splitting
/// residual. Zero exactly when Tu and T(v-u) have disjoint supports.
double splitting_residual_q(const OperatorSpec& T, const SeqVec& u,
                            const SeqVec& v, Exponent q);

/// | ||w-u||_p^p - (1 - ||u||_p^p) | for unit w (checked to 1e-8).
double splitting_residual_p(const SeqVec& u, const SeqVec& w, Exponent p);

/// Attainment verdict for T at its declared exponents (p > 1 required; the
/// p = 1 phenomenon is demo-only because coordinatewise smallness does not
/// witness weak nullity in l_1).
///
///   attains          the weak-limit candidate u is nonzero and u/||u||
///                    reproduces the ladder norm within attain_tol;
///   does_not_attain  the trace is weakly-null-like and no canonical e_j
///                    with j <= window comes within attain_tol of the norm;
///   inconclusive     anything else.
AttainmentReport diagnose(const OperatorSpec& T,
                          const DiagnoseConfig& cfg = {});

struct DiagnoseOutcome {
  AttainmentReport report;
  MaximizingTrace trace;
};

/// diagnose plus the trace it was computed from (for exports).
DiagnoseOutcome diagnose_with_trace(const OperatorSpec& T,
                                    const DiagnoseConfig& cfg = {});

/// rhs = t^q + (1-t^p)^(q/p) for t in [0,1], q > p. forces_boundary tells
/// whether rhs >= 1 - 1e-12, which happens only at t in {0,1}.
std::pair<double, bool> scalar_dichotomy(double t, Exponent p, Exponent q);

struct PrecompactnessResult {
  bool is_cauchy_like = false;
  double max_tail_gap = 0;
};

/// Max pairwise l_p distance among the last five certificates after sign
/// alignment (largest-magnitude coordinate made positive). Expect a small
/// gap for attaining operators with p != q and gap 1 for the p = q identity
/// counterexample trace. Throws if the trace has fewer than five steps.
PrecompactnessResult precompactness_check(const OperatorSpec& T,
                                          const MaximizingTrace& trace,
                                          double tol_cauchy = 1e-6);

struct MonotoneCheckResult {
  bool is_monotone_on_samples = false;
  bool column_condition = false;
};

/// Checks ||T(rearrange(x))||_q >= ||T(x)||_q on seeded random vectors, and
/// the entrywise column condition on the materialized section (diagonal
/// operators: entries non-increasing and nonnegative; other kinds: every
/// row non-increasing across columns and nonnegative).
MonotoneCheckResult monotone_check(const OperatorSpec& T, Exponent p,
                                   Exponent q, int samples,
                                   std::uint64_t seed);

/// Verifies the rearrangement attainment principle: requires monotone_check
/// to pass and the ladder at source exponent p+eps to stay bounded, then
/// diagnoses the trace of rearranged certificates and checks verdict ==
/// Attains. Throws when a precondition fails.
AttainmentReport theorem_monotone_verify(const OperatorSpec& T, Exponent p,
                                         Exponent q, double eps,
                                         const DiagnoseConfig& cfg = {});

struct BlockExtraction {
  std::vector<SeqVec> blocks;  // unit, pairwise disjoint supports
  double isometry_defect = 0;
  double image_equivalence_defect = 0;
  double image_constant_lo = 0;  // min_i ||T(block_i)||_q
  double image_constant_hi = 0;  // max_i ||T(block_i)||_q
};

/// Greedy gliding-hump selection: certificates whose l_p mass on previously
/// used support stays below overlap_tol are truncated to exact disjointness,
/// renormalized and kept. isometry_defect = max |  ||sum a_i b_i||_p -
/// ||a||_p | over random coefficient vectors; image_equivalence_defect is
/// the amount by which ||sum a_i T(b_i)||_q leaves the two-sided band
/// [lo ||a||_q, hi ||a||_q]. Throws when fewer than 2 blocks are admissible.
BlockExtraction block_extraction(const OperatorSpec& T,
                                 const MaximizingTrace& trace,
                                 double overlap_tol, int coeff_samples = 100,
                                 std::uint64_t seed = 0);

/// sum_i |Tu_i| * |Tv_i - Tu_i|^(q-1); vanishes exactly when the increment
/// Tv - Tu misses the support of Tu.
double cross_term(const SeqVec& Tu, const SeqVec& Tv, Exponent q);

}  // namespace normopt

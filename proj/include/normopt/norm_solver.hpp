#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normopt/operators.hpp"
#include "normopt/sequence_space.hpp"

namespace normopt {

enum class Method { Power, BruteForce, Ladder, Diagonal };

std::string method_name(Method m);

/// One norm estimate: value is a certified lower bound of the section norm,
/// reproduced by the certificate (||T cert||_q = value, ||cert||_p = 1).
/// Certificates are sign-normalized so the largest-magnitude coordinate is
/// positive (ties: lowest index).
struct NormEstimate {
  double value = 0;
  SeqVec certificate;
  Method method = Method::Power;
  int iterations = 0;
  bool converged = false;
  std::size_t section = 0;
  /// Smallest consecutive value change observed across all starts; the
  /// duality-map iteration is an ascent scheme, so this stays >= -1e-12.
  double min_ascent_step = 0;
};

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 400;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ladder = {2, 4, 8, 16, 32, 64, 128, 256};

  void validate() const;
};

/// Largest l_p->l_q ascent value over multiple starts of the generalized
/// power iteration x <- normalize_p(J_p*(A^T J_q(A x))). Starts: every
/// canonical e_j, the flat vector, and cfg.restarts seeded random vectors.
/// Requires p > 1; the zero matrix returns value 0 with certificate e_1.
NormEstimate power_norm(const DenseMatrix& A, Exponent p, Exponent q,
                        const SolverConfig& cfg);

/// Grid-search oracle over the unit l_p sphere for sections of size <= 3:
/// sign-pattern enumeration x a simplex/angular grid, local refinement, then
/// a coordinatewise pattern-search polish. Independent of the duality-map
/// iteration. density <= 0 picks the default grid.
NormEstimate bruteforce_norm(const DenseMatrix& A, Exponent p, Exponent q,
                             int density = 0);

/// Exact section norm for diagonal operators with p <= q: sup of |entries|
/// with the matching canonical certificate (ties: lowest index).
NormEstimate diagonal_sup_norm(const OperatorSpec& T, std::size_t n);

struct LadderResult {
  NormEstimate overall;                // method Ladder, value = sup of rungs
  std::vector<NormEstimate> sections;  // one estimate per ladder rung
};

/// Norm estimates over nested finite sections. Values are non-decreasing in
/// the section size; the overall value is the final (= largest) rung.
/// Diagonal specs with p <= q take the exact sup-entry path; otherwise the
/// power iteration runs per section (p = 1 falls back to the brute-force
/// oracle and is limited to sections of size <= 3).
LadderResult ladder_norm(const OperatorSpec& T, const SolverConfig& cfg);

}  // namespace normopt

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "normopt/sequence_space.hpp"

namespace normopt {

/// Partition of the positive integers into infinitely many infinite classes
/// A_k = {a_1^(k) < a_2^(k) < ...}, pairwise disjoint and jointly covering.
/// Only the dyadic rule is implemented: a_j^(k) = 2^(k-1) (2j - 1), so A_1
/// is the odd integers, A_2 = {2, 6, 10, ...} and so on. Index arithmetic
/// is O(1) in both directions.
class Partition {
 public:
  static Partition dyadic();

  /// a_j^(k), 1-based in both arguments.
  std::uint64_t element(std::uint64_t k, std::uint64_t j) const;

  /// Inverse lookup: the unique (k, j) with a_j^(k) = n.
  std::pair<std::uint64_t, std::uint64_t> locate(std::uint64_t n) const;

  const std::string& rule() const { return rule_; }

 private:
  explicit Partition(std::string rule) : rule_(std::move(rule)) {}
  std::string rule_;
};

/// Dense row-major matrix used for materialized finite sections.
/// Sections larger than kMaxSection on either side are rejected.
struct DenseMatrix {
  static constexpr std::size_t kMaxSection = 4096;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major, rows*cols entries

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c);
  explicit DenseMatrix(const std::vector<std::vector<double>>& entries);

  static DenseMatrix identity(std::size_t n);

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool is_zero() const;
};

enum class OpKind { Diagonal, DenseMatrix, Interleaved, DisjointSum };

enum class DiagonalRule { Novo1, Reciprocal, Explicit };

struct SumTerm {
  double coeff = 0;
  std::uint64_t block = 0;  // partition class index k
};

/// Declarative operator description from which finite sections are
/// materialized. Immutable after construction; all accessors are const.
///
///  - Diagonal: entry rule d_n (novo1: n/(n+1); reciprocal: 1/n; explicit
///    list, zero beyond it).
///  - DenseMatrix: a fixed matrix, extended by zeros beyond its size.
///  - Interleaved: row j of the base operator moved to row a_j^(k).
///  - DisjointSum: sum of coeff * interleave(base, k) over distinct blocks.
class OperatorSpec {
 public:
  static OperatorSpec diagonal(DiagonalRule rule, Exponent p, Exponent q,
                               std::vector<double> entries = {});
  static OperatorSpec dense(DenseMatrix m, Exponent p, Exponent q);
  static OperatorSpec interleaved(OperatorSpec base, std::uint64_t k,
                                  Partition partition);
  static OperatorSpec disjoint_sum(OperatorSpec base,
                                   std::vector<SumTerm> terms,
                                   Partition partition);

  OpKind kind() const { return kind_; }
  Exponent source_p() const { return p_; }
  Exponent target_q() const { return q_; }

  DiagonalRule diag_rule() const;
  /// Diagonal entry d_n (1-based); requires kind() == Diagonal.
  double diag_entry(std::uint64_t n) const;
  const std::vector<double>& explicit_entries() const;

  const DenseMatrix& matrix() const;

  const OperatorSpec& base() const;
  std::uint64_t block_index() const;
  const Partition& partition() const;
  const std::vector<SumTerm>& terms() const;

  void override_exponents(Exponent p, Exponent q) {
    p_ = p;
    q_ = q;
  }

 private:
  OperatorSpec(OpKind kind, Exponent p, Exponent q)
      : kind_(kind), p_(p), q_(q) {}

  OpKind kind_;
  Exponent p_;
  Exponent q_;

  DiagonalRule rule_ = DiagonalRule::Explicit;
  std::vector<double> entries_;
  DenseMatrix matrix_;
  std::shared_ptr<const OperatorSpec> base_;
  std::uint64_t block_ = 0;
  std::shared_ptr<const Partition> partition_;
  std::vector<SumTerm> terms_;
};

/// T(x) for finitely supported x. Interleaved/DisjointSum scatter within
/// the SeqVec index cap; past it the call throws.
SeqVec apply(const OperatorSpec& T, const SeqVec& x);

/// Materializes the section <T e_j, e_i> for j <= n. Rows auto-size: plain
/// kinds give n x n; interleaved kinds grow rows to cover every moved row,
/// so sections are nested (the n-section is the leading block of any larger
/// one). Sections beyond DenseMatrix::kMaxSection are rejected.
DenseMatrix finite_section(const OperatorSpec& T, std::size_t n);

/// Number of rows finite_section(T, n) materializes.
std::size_t section_rows(const OperatorSpec& T, std::size_t n);

/// The diagonal operator with entries n/(n+1), bounded but with no maximal
/// entry; the stock example of a non-norm-attaining operator.
OperatorSpec op_novo1(Exponent p = Exponent(2), Exponent q = Exponent(2));

/// Diagonal entries 1/n; attains its norm at e_1 for p <= q.
OperatorSpec op_reciprocal(Exponent p = Exponent(2), Exponent q = Exponent(2));

Partition dyadic_partition();

/// v_k with row a_j^(k) of v_k equal to row j of u and all other rows zero;
/// satisfies ||v_k(x)||_q = ||u(x)||_q for every x.
OperatorSpec interleave(const OperatorSpec& u, std::uint64_t k,
                        const Partition& P);

/// sum_k coeff_k * interleave(u, k) over pairwise distinct blocks, so
/// ||sum(x)||_q^q = sum_k |coeff_k|^q ||u(x)||_q^q exactly.
OperatorSpec disjoint_sum(const std::vector<SumTerm>& terms,
                          const OperatorSpec& u, const Partition& P);

}  // namespace normopt

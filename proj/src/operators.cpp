#include "normopt/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace normopt {

Partition Partition::dyadic() { return Partition("dyadic"); }

std::uint64_t Partition::element(std::uint64_t k, std::uint64_t j) const {
  if (k == 0 || j == 0) {
    throw std::invalid_argument("partition indices are 1-based");
  }
  if (k > 40 || j > (std::uint64_t{1} << 40)) {
    throw std::runtime_error("partition element overflows the index range");
  }
  return (std::uint64_t{1} << (k - 1)) * (2 * j - 1);
}

std::pair<std::uint64_t, std::uint64_t> Partition::locate(
    std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("positive integers only");
  // n = 2^(k-1) * (2j-1): k-1 is the dyadic valuation, the odd part gives j.
  unsigned tz = static_cast<unsigned>(std::countr_zero(n));
  std::uint64_t odd = n >> tz;
  return {tz + 1, (odd + 1) / 2};
}

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), data(r * c, 0.0) {
  if (r > kMaxSection || c > kMaxSection) {
    throw std::invalid_argument("section exceeds the dense storage cap");
  }
}

DenseMatrix::DenseMatrix(const std::vector<std::vector<double>>& entries) {
  rows = entries.size();
  cols = rows == 0 ? 0 : entries[0].size();
  if (rows > kMaxSection || cols > kMaxSection) {
    throw std::invalid_argument("section exceeds the dense storage cap");
  }
  data.assign(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double v = entries[i][j];
      if (!std::isfinite(v)) {
        throw std::invalid_argument("matrix entries must be finite");
      }
      at(i, j) = v;
    }
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(),
                     [](double v) { return v == 0.0; });
}

OperatorSpec OperatorSpec::diagonal(DiagonalRule rule, Exponent p, Exponent q,
                                    std::vector<double> entries) {
  OperatorSpec op(OpKind::Diagonal, p, q);
  op.rule_ = rule;
  if (rule == DiagonalRule::Explicit) {
    for (double v : entries) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("diagonal entries must be finite");
      }
    }
    op.entries_ = std::move(entries);
  } else if (!entries.empty()) {
    throw std::invalid_argument("entry list only valid for the explicit rule");
  }
  return op;
}

OperatorSpec OperatorSpec::dense(DenseMatrix m, Exponent p, Exponent q) {
  OperatorSpec op(OpKind::DenseMatrix, p, q);
  op.matrix_ = std::move(m);
  return op;
}

OperatorSpec OperatorSpec::interleaved(OperatorSpec base, std::uint64_t k,
                                       Partition partition) {
  if (k == 0) throw std::invalid_argument("block index k must be >= 1");
  if (base.kind() == OpKind::Interleaved ||
      base.kind() == OpKind::DisjointSum) {
    throw std::invalid_argument("nested interleaving is not supported");
  }
  OperatorSpec op(OpKind::Interleaved, base.source_p(), base.target_q());
  op.base_ = std::make_shared<const OperatorSpec>(std::move(base));
  op.block_ = k;
  op.partition_ = std::make_shared<const Partition>(std::move(partition));
  return op;
}

OperatorSpec OperatorSpec::disjoint_sum(OperatorSpec base,
                                        std::vector<SumTerm> terms,
                                        Partition partition) {
  if (terms.empty()) throw std::invalid_argument("disjoint sum needs terms");
  std::set<std::uint64_t> blocks;
  for (const auto& t : terms) {
    if (t.block == 0) throw std::invalid_argument("block index must be >= 1");
    if (!std::isfinite(t.coeff)) {
      throw std::invalid_argument("coefficients must be finite");
    }
    if (!blocks.insert(t.block).second) {
      throw std::invalid_argument("duplicate block index in disjoint sum");
    }
  }
  if (base.kind() == OpKind::Interleaved ||
      base.kind() == OpKind::DisjointSum) {
    throw std::invalid_argument("nested interleaving is not supported");
  }
  OperatorSpec op(OpKind::DisjointSum, base.source_p(), base.target_q());
  op.base_ = std::make_shared<const OperatorSpec>(std::move(base));
  op.terms_ = std::move(terms);
  op.partition_ = std::make_shared<const Partition>(std::move(partition));
  return op;
}

DiagonalRule OperatorSpec::diag_rule() const {
  if (kind_ != OpKind::Diagonal) throw std::logic_error("not a diagonal op");
  return rule_;
}

double OperatorSpec::diag_entry(std::uint64_t n) const {
  if (kind_ != OpKind::Diagonal) throw std::logic_error("not a diagonal op");
  if (n == 0) throw std::invalid_argument("entry index is 1-based");
  switch (rule_) {
    case DiagonalRule::Novo1:
      return static_cast<double>(n) / static_cast<double>(n + 1);
    case DiagonalRule::Reciprocal:
      return 1.0 / static_cast<double>(n);
    case DiagonalRule::Explicit:
      return n <= entries_.size() ? entries_[n - 1] : 0.0;
  }
  return 0.0;
}

const std::vector<double>& OperatorSpec::explicit_entries() const {
  if (kind_ != OpKind::Diagonal || rule_ != DiagonalRule::Explicit) {
    throw std::logic_error("no explicit entry list");
  }
  return entries_;
}

const DenseMatrix& OperatorSpec::matrix() const {
  if (kind_ != OpKind::DenseMatrix) throw std::logic_error("not a dense op");
  return matrix_;
}

const OperatorSpec& OperatorSpec::base() const {
  if (!base_) throw std::logic_error("operator has no base");
  return *base_;
}

std::uint64_t OperatorSpec::block_index() const {
  if (kind_ != OpKind::Interleaved) throw std::logic_error("not interleaved");
  return block_;
}

const Partition& OperatorSpec::partition() const {
  if (!partition_) throw std::logic_error("operator has no partition");
  return *partition_;
}

const std::vector<SumTerm>& OperatorSpec::terms() const {
  if (kind_ != OpKind::DisjointSum) throw std::logic_error("not a sum");
  return terms_;
}

namespace {

SeqVec scatter(const SeqVec& y, std::uint64_t k, const Partition& P,
               double coeff, SeqVec into) {
  for (std::size_t j = 1; j <= y.size(); ++j) {
    double v = y.coord(j);
    if (v == 0.0) continue;
    std::uint64_t row = P.element(k, j);
    into.set_coord(static_cast<std::size_t>(row),
                   into.coord(static_cast<std::size_t>(row)) + coeff * v);
  }
  return into;
}

}  // namespace

SeqVec apply(const OperatorSpec& T, const SeqVec& x) {
  switch (T.kind()) {
    case OpKind::Diagonal: {
      SeqVec y;
      for (std::size_t i = 1; i <= x.size(); ++i) {
        double v = x.coord(i);
        if (v != 0.0) y.set_coord(i, T.diag_entry(i) * v);
      }
      return y;
    }
    case OpKind::DenseMatrix: {
      const DenseMatrix& m = T.matrix();
      SeqVec y;
      std::size_t jmax = std::min(x.size(), m.cols);
      for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < jmax; ++j) {
          s += m.at(i, j) * x.coord(j + 1);
        }
        if (s != 0.0) y.set_coord(i + 1, s);
      }
      return y;
    }
    case OpKind::Interleaved: {
      SeqVec y = apply(T.base(), x);
      return scatter(y, T.block_index(), T.partition(), 1.0, SeqVec{});
    }
    case OpKind::DisjointSum: {
      SeqVec y = apply(T.base(), x);
      SeqVec out;
      for (const auto& t : T.terms()) {
        if (t.coeff == 0.0) continue;
        out = scatter(y, t.block, T.partition(), t.coeff, std::move(out));
      }
      return out;
    }
  }
  throw std::logic_error("unknown operator kind");
}

std::size_t section_rows(const OperatorSpec& T, std::size_t n) {
  switch (T.kind()) {
    case OpKind::Diagonal:
    case OpKind::DenseMatrix:
      return n;
    case OpKind::Interleaved:
      return static_cast<std::size_t>(
          T.partition().element(T.block_index(), n));
    case OpKind::DisjointSum: {
      std::uint64_t m = 0;
      for (const auto& t : T.terms()) {
        m = std::max(m, T.partition().element(t.block, n));
      }
      return static_cast<std::size_t>(m);
    }
  }
  throw std::logic_error("unknown operator kind");
}

DenseMatrix finite_section(const OperatorSpec& T, std::size_t n) {
  if (n == 0) throw std::invalid_argument("section size must be >= 1");
  std::size_t rows = section_rows(T, n);
  if (rows > DenseMatrix::kMaxSection || n > DenseMatrix::kMaxSection) {
    throw std::invalid_argument("section exceeds the dense storage cap");
  }
  DenseMatrix m(rows, n);
  for (std::size_t j = 1; j <= n; ++j) {
    SeqVec col = apply(T, SeqVec::unit(j));
    for (std::size_t i = 1; i <= std::min<std::size_t>(col.size(), rows);
         ++i) {
      m.at(i - 1, j - 1) = col.coord(i);
    }
  }
  return m;
}

OperatorSpec op_novo1(Exponent p, Exponent q) {
  return OperatorSpec::diagonal(DiagonalRule::Novo1, p, q);
}

OperatorSpec op_reciprocal(Exponent p, Exponent q) {
  return OperatorSpec::diagonal(DiagonalRule::Reciprocal, p, q);
}

Partition dyadic_partition() { return Partition::dyadic(); }

OperatorSpec interleave(const OperatorSpec& u, std::uint64_t k,
                        const Partition& P) {
  return OperatorSpec::interleaved(u, k, P);
}

OperatorSpec disjoint_sum(const std::vector<SumTerm>& terms,
                          const OperatorSpec& u, const Partition& P) {
  return OperatorSpec::disjoint_sum(u, terms, P);
}

}  // namespace normopt

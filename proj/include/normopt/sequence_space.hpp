#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

namespace normopt {

/// Finitely supported real sequence, the common vector currency of the
/// library. Coordinates are logically indexed from 1 and everything past
/// size() is zero, so a SeqVec stands in for an element of l_p with finite
/// support. Two vectors that differ only in trailing zeros are equal.
///
/// All coordinates must be finite; constructors and set_coord throw
/// std::invalid_argument on NaN or infinity.
class SeqVec {
 public:
  // Dense materialization cap; scattered writes past this throw.
  static constexpr std::size_t kMaxIndex = std::size_t{1} << 22;

  SeqVec() = default;
  SeqVec(std::initializer_list<double> coords);
  explicit SeqVec(std::vector<double> coords);

  /// Canonical basis vector e_index (1-based).
  static SeqVec unit(std::size_t index);

  /// 1-based access; indices past the stored length read as 0.
  double coord(std::size_t index) const;
  void set_coord(std::size_t index, double value);

  std::size_t size() const { return coords_.size(); }
  bool is_zero() const;
  const std::vector<double>& coords() const { return coords_; }

  /// Drops trailing zeros in place (the canonical representative).
  SeqVec& trim();

  std::size_t support_size() const;
  /// Index of the first nonzero coordinate, 0 for the zero vector.
  std::size_t leading_nonzero() const;
  /// Index of the largest-magnitude coordinate (ties: lowest index);
  /// 0 for the zero vector.
  std::size_t argmax_abs() const;

  SeqVec& operator+=(const SeqVec& rhs);
  SeqVec& operator-=(const SeqVec& rhs);
  SeqVec& operator*=(double c);

  friend SeqVec operator+(SeqVec a, const SeqVec& b) { return a += b; }
  friend SeqVec operator-(SeqVec a, const SeqVec& b) { return a -= b; }
  friend SeqVec operator*(SeqVec a, double c) { return a *= c; }
  friend SeqVec operator*(double c, SeqVec a) { return a *= c; }

  // Equality ignores trailing zeros.
  friend bool operator==(const SeqVec& a, const SeqVec& b);
  friend bool operator!=(const SeqVec& a, const SeqVec& b) { return !(a == b); }

  /// FNV-1a over the trimmed coordinate bytes, so equal vectors hash equal.
  std::size_t hash() const;

 private:
  std::vector<double> coords_;
};

/// Norm exponent r in [1, 1e6]. Operations that need r > 1 (conjugation,
/// the duality-map power iteration, phi) reject r = 1 explicitly.
class Exponent {
 public:
  explicit Exponent(double value);
  double value() const { return v_; }
  bool is_one() const;
  /// Holder conjugate r/(r-1); requires r > 1.
  Exponent conjugate() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.v_ == b.v_;
  }

 private:
  double v_;
};

/// l_r norm (sum |x_i|^r)^(1/r); 0 for the zero vector.
double norm(const SeqVec& x, Exponent r);

/// l_infinity norm.
double sup_norm(const SeqVec& x);

/// Non-increasing rearrangement: |x_i| sorted non-increasingly, stable on
/// ties. Output length equals input length; preserves every l_r norm.
SeqVec rearrange(const SeqVec& x);

/// Coordinatewise y_i -> sign(y_i)|y_i|^(r-1), with sign(0) = 0. For r = 1
/// this is the sign vector. Satisfies <duality_map(y,r), y> = norm(y,r)^r.
SeqVec duality_map(const SeqVec& y, Exponent r);

double inner(const SeqVec& a, const SeqVec& b);

/// phi_r(X) = | |X|^r - |X-1|^r - 1 | / |X-1|^(r-1) for r > 1, X != 1.
/// Tends to r as |X| -> infinity.
double phi(Exponent r, double X);

struct SplittingConstants {
  double C = 0;      // bound for |X-1| >= eps
  double delta = 0;  // bound for |X-1| <= eps
};

/// Constants (C_eps, delta(eps)) with
///   | |X|^r - |X-1|^r - 1 | <= C_eps |X-1|^(r-1) + delta(eps)  for all X.
/// C is a numeric sup of phi_r over {|X-1| >= eps} (grid plus the asymptote
/// r(1+eps)); delta = eps^r + max((1+eps)^r - 1, 1 - (1-eps)^r).
/// Requires r > 1 and eps in (0,1).
SplittingConstants splitting_bound_constants(Exponent r, double eps);

/// Truth of (alpha+beta)^theta <= alpha^theta + beta^theta for
/// alpha, beta >= 0 and theta in [0,1]. Rejects inputs outside that range.
bool concavity_check(double alpha, double beta, double theta);

struct InterpolationBound {
  double lhs = 0;  // norm(x, p+eps)
  double rhs = 0;  // sup_norm(x)^(eps/(p+eps)) * norm(x,p)^(p/(p+eps))
};

/// Both sides of the interpolation inequality lhs <= rhs; eps > 0.
InterpolationBound interpolation_bound(const SeqVec& x, Exponent p,
                                       double eps);

}  // namespace normopt

template <>
struct std::hash<normopt::SeqVec> {
  std::size_t operator()(const normopt::SeqVec& v) const { return v.hash(); }
};

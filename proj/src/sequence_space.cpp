#include "normopt/sequence_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

namespace normopt {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("SeqVec coordinates must be finite");
  }
}

}  // namespace

SeqVec::SeqVec(std::initializer_list<double> coords)
    : SeqVec(std::vector<double>(coords)) {}

SeqVec::SeqVec(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double v : coords_) require_finite(v);
}

SeqVec SeqVec::unit(std::size_t index) {
  if (index == 0) throw std::invalid_argument("unit index is 1-based");
  SeqVec e;
  e.set_coord(index, 1.0);
  return e;
}

double SeqVec::coord(std::size_t index) const {
  if (index == 0) throw std::invalid_argument("coord index is 1-based");
  return index <= coords_.size() ? coords_[index - 1] : 0.0;
}

void SeqVec::set_coord(std::size_t index, double value) {
  if (index == 0) throw std::invalid_argument("coord index is 1-based");
  if (index > kMaxIndex) {
    throw std::runtime_error("SeqVec index " + std::to_string(index) +
                             " exceeds the dense materialization cap");
  }
  require_finite(value);
  if (index > coords_.size()) {
    if (value == 0.0) return;
    coords_.resize(index, 0.0);
  }
  coords_[index - 1] = value;
}

bool SeqVec::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double v) { return v == 0.0; });
}

SeqVec& SeqVec::trim() {
  while (!coords_.empty() && coords_.back() == 0.0) coords_.pop_back();
  return *this;
}

std::size_t SeqVec::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(coords_.begin(), coords_.end(),
                    [](double v) { return v != 0.0; }));
}

std::size_t SeqVec::leading_nonzero() const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0.0) return i + 1;
  }
  return 0;
}

std::size_t SeqVec::argmax_abs() const {
  std::size_t best = 0;
  double best_abs = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    double a = std::fabs(coords_[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i + 1;
    }
  }
  return best;
}

SeqVec& SeqVec::operator+=(const SeqVec& rhs) {
  if (rhs.coords_.size() > coords_.size()) coords_.resize(rhs.coords_.size());
  for (std::size_t i = 0; i < rhs.coords_.size(); ++i) {
    coords_[i] += rhs.coords_[i];
    require_finite(coords_[i]);
  }
  return *this;
}

SeqVec& SeqVec::operator-=(const SeqVec& rhs) {
  if (rhs.coords_.size() > coords_.size()) coords_.resize(rhs.coords_.size());
  for (std::size_t i = 0; i < rhs.coords_.size(); ++i) {
    coords_[i] -= rhs.coords_[i];
    require_finite(coords_[i]);
  }
  return *this;
}

SeqVec& SeqVec::operator*=(double c) {
  require_finite(c);
  for (double& v : coords_) v *= c;
  return *this;
}

bool operator==(const SeqVec& a, const SeqVec& b) {
  std::size_t n = std::max(a.coords_.size(), b.coords_.size());
  for (std::size_t i = 1; i <= n; ++i) {
    if (a.coord(i) != b.coord(i)) return false;
  }
  return true;
}

std::size_t SeqVec::hash() const {
  // Normalize length first so equal vectors hash equal.
  std::size_t n = coords_.size();
  while (n > 0 && coords_[n - 1] == 0.0) --n;
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    double d = coords_[i] == 0.0 ? 0.0 : coords_[i];  // collapse -0.0
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

Exponent::Exponent(double value) : v_(value) {
  if (!std::isfinite(value) || value < 1.0 || value > 1e6) {
    throw std::invalid_argument("Exponent must lie in [1, 1e6]");
  }
}

bool Exponent::is_one() const { return v_ == 1.0; }

Exponent Exponent::conjugate() const {
  if (v_ <= 1.0) {
    throw std::invalid_argument("conjugate exponent requires r > 1");
  }
  return Exponent(v_ / (v_ - 1.0));
}

double norm(const SeqVec& x, Exponent r) {
  const double rv = r.value();
  if (rv == 1.0) {
    double s = 0;
    for (double v : x.coords()) s += std::fabs(v);
    return s;
  }
  if (rv == 2.0) {
    double s = 0;
    for (double v : x.coords()) s += v * v;
    return std::sqrt(s);
  }
  // Scale by the sup to avoid overflow/underflow for large exponents.
  double m = sup_norm(x);
  if (m == 0.0) return 0.0;
  double s = 0;
  for (double v : x.coords()) {
    if (v != 0.0) s += std::pow(std::fabs(v) / m, rv);
  }
  return m * std::pow(s, 1.0 / rv);
}

double sup_norm(const SeqVec& x) {
  double m = 0;
  for (double v : x.coords()) m = std::max(m, std::fabs(v));
  return m;
}

SeqVec rearrange(const SeqVec& x) {
  std::vector<double> mags(x.coords().size());
  std::transform(x.coords().begin(), x.coords().end(), mags.begin(),
                 [](double v) { return std::fabs(v); });
  std::stable_sort(mags.begin(), mags.end(), std::greater<double>());
  return SeqVec(std::move(mags));
}

SeqVec duality_map(const SeqVec& y, Exponent r) {
  const double rv = r.value();
  std::vector<double> out(y.coords().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double v = y.coords()[i];
    if (v == 0.0) {
      out[i] = 0.0;
    } else if (rv == 1.0) {
      out[i] = v > 0 ? 1.0 : -1.0;
    } else {
      out[i] = std::copysign(std::pow(std::fabs(v), rv - 1.0), v);
    }
  }
  return SeqVec(std::move(out));
}

double inner(const SeqVec& a, const SeqVec& b) {
  std::size_t n = std::min(a.size(), b.size());
  double s = 0;
  for (std::size_t i = 1; i <= n; ++i) s += a.coord(i) * b.coord(i);
  return s;
}

double phi(Exponent r, double X) {
  const double rv = r.value();
  if (rv <= 1.0) throw std::invalid_argument("phi requires r > 1");
  if (X == 1.0) throw std::invalid_argument("phi is undefined at X = 1");
  double num = std::fabs(std::pow(std::fabs(X), rv) -
                         std::pow(std::fabs(X - 1.0), rv) - 1.0);
  double den = std::pow(std::fabs(X - 1.0), rv - 1.0);
  return num / den;
}

SplittingConstants splitting_bound_constants(Exponent r, double eps) {
  const double rv = r.value();
  if (rv <= 1.0) {
    throw std::invalid_argument("splitting_bound_constants requires r > 1");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }

  // Sup of phi_r over {|X-1| >= eps}. Beyond R the asymptote r dominates.
  // R can reach ~1e6 for r near 1, so the grid over s = |X-1| must be
  // log-spaced: a uniform grid at that span skips the peak region s ~ 1
  // entirely and returns a C that fails the inequality. Small headroom keeps
  // the bound valid at off-grid verification points.
  const double R =
      std::max(10.0, std::pow(10.0 * rv / eps, 1.0 / (rv - 1.0)) + 2.0);
  const int kGrid = 10000;
  const double ratio = R / eps;
  double grid_sup = 0;
  for (int i = 0; i <= kGrid; ++i) {
    double s = eps * std::pow(ratio, static_cast<double>(i) / kGrid);
    grid_sup = std::max(grid_sup, phi(r, 1.0 + s));
    grid_sup = std::max(grid_sup, phi(r, 1.0 - s));
  }
  double c = std::max(grid_sup * (1.0 + 1e-6) + 1e-9, rv * (1.0 + eps));

  double delta_tilde =
      std::max(std::pow(1.0 + eps, rv) - 1.0, 1.0 - std::pow(1.0 - eps, rv));
  return {c, std::pow(eps, rv) + delta_tilde};
}

bool concavity_check(double alpha, double beta, double theta) {
  if (alpha < 0.0 || beta < 0.0) {
    throw std::invalid_argument("concavity_check requires alpha, beta >= 0");
  }
  if (theta < 0.0 || theta > 1.0) {
    throw std::invalid_argument("concavity_check requires theta in [0, 1]");
  }
  double lhs = std::pow(alpha + beta, theta);
  double rhs = std::pow(alpha, theta) + std::pow(beta, theta);
  return lhs <= rhs + 1e-12 * std::max(1.0, rhs);
}

InterpolationBound interpolation_bound(const SeqVec& x, Exponent p,
                                       double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double pv = p.value();
  InterpolationBound b;
  b.lhs = norm(x, Exponent(pv + eps));
  b.rhs = std::pow(sup_norm(x), eps / (pv + eps)) *
          std::pow(norm(x, p), pv / (pv + eps));
  return b;
}

}  // namespace normopt

#include "normopt/norm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "normopt/rng.hpp"

namespace normopt {

namespace {

using Vec = std::vector<double>;

Vec matvec(const DenseMatrix& A, const Vec& x) {
  Vec y(A.rows, 0.0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    double s = 0;
    const double* row = A.data.data() + i * A.cols;
    for (std::size_t j = 0; j < A.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vec matvec_t(const DenseMatrix& A, const Vec& y) {
  Vec z(A.cols, 0.0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    const double* row = A.data.data() + i * A.cols;
    for (std::size_t j = 0; j < A.cols; ++j) z[j] += row[j] * y[i];
  }
  return z;
}

double vec_norm(const Vec& x, double r) {
  double m = 0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  if (r == 2.0) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  if (r == 1.0) {
    double s = 0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  double s = 0;
  for (double v : x) {
    if (v != 0.0) s += std::pow(std::fabs(v) / m, r);
  }
  return m * std::pow(s, 1.0 / r);
}

// y -> sign(y)|y|^(r-1) componentwise, in place.
void dual_map(Vec& y, double r) {
  for (double& v : y) {
    if (v == 0.0) continue;
    v = r == 1.0 ? (v > 0 ? 1.0 : -1.0)
                 : std::copysign(std::pow(std::fabs(v), r - 1.0), v);
  }
}

bool normalize(Vec& x, double p) {
  double n = vec_norm(x, p);
  if (n == 0.0) return false;
  for (double& v : x) v /= n;
  return true;
}

std::size_t leading_nonzero(const Vec& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) return i + 1;
  }
  return 0;
}

void canonical_sign(Vec& x) {
  std::size_t arg = 0;
  double best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i]) > best) {
      best = std::fabs(x[i]);
      arg = i;
    }
  }
  if (best > 0 && x[arg] < 0) {
    for (double& v : x) v = -v;
  }
}

SeqVec to_seqvec(const Vec& x) {
  SeqVec v(x);
  v.trim();
  return v;
}

struct Candidate {
  double value = -1;
  Vec x;
  int iterations = 0;
  bool converged = false;
  double min_delta = 0;
};

Candidate run_power_start(const DenseMatrix& A, double p, double q, Vec x,
                          const SolverConfig& cfg) {
  Candidate c;
  if (!normalize(x, p)) return c;
  const double pstar = p / (p - 1.0);
  Vec y = matvec(A, x);
  double v = vec_norm(y, q);
  c.min_delta = 0;
  int stall = 0;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    if (v == 0.0) break;
    Vec g = y;
    dual_map(g, q);
    Vec z = matvec_t(A, g);
    dual_map(z, pstar);
    if (!normalize(z, p)) break;
    x = std::move(z);
    y = matvec(A, x);
    double v_new = vec_norm(y, q);
    double delta = v_new - v;
    c.min_delta = std::min(c.min_delta, delta);
    if (std::fabs(delta) <= cfg.tol * std::max(1.0, v_new)) {
      if (++stall >= 3) {
        v = v_new;
        ++it;
        c.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
    v = v_new;
  }
  c.value = v;
  c.x = std::move(x);
  c.iterations = it;
  if (v == 0.0) c.converged = true;
  return c;
}

// Larger value wins; ties (1e-12 relative) go to the certificate whose
// leading nonzero coordinate comes first, then to the earlier start.
bool improves(const Candidate& cand, const Candidate& best) {
  if (cand.value < 0) return false;
  if (best.value < 0) return true;
  double tie = 1e-12 * std::max(1.0, std::max(cand.value, best.value));
  if (cand.value > best.value + tie) return true;
  if (cand.value < best.value - tie) return false;
  return leading_nonzero(cand.x) < leading_nonzero(best.x);
}

NormEstimate zero_estimate(std::size_t cols, Method m) {
  NormEstimate e;
  e.value = 0.0;
  e.certificate = SeqVec::unit(1);
  e.method = m;
  e.converged = true;
  e.section = cols;
  return e;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Power:
      return "power";
    case Method::BruteForce:
      return "bruteforce";
    case Method::Ladder:
      return "ladder";
    case Method::Diagonal:
      return "diagonal";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (ladder.empty()) throw std::invalid_argument("ladder must be nonempty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1 || (i > 0 && ladder[i] <= ladder[i - 1])) {
      throw std::invalid_argument("ladder must be strictly increasing");
    }
  }
}

NormEstimate power_norm(const DenseMatrix& A, Exponent p, Exponent q,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (p.value() <= 1.0) {
    throw std::invalid_argument(
        "power_norm requires p > 1 (conjugate exponent undefined at p = 1); "
        "use the brute-force oracle or a diagonal rule instead");
  }
  if (A.rows == 0 || A.cols == 0 || A.is_zero()) {
    return zero_estimate(std::max<std::size_t>(A.cols, 1), Method::Power);
  }

  const double pv = p.value(), qv = q.value();
  Candidate best;
  int total_iters = 0;
  double min_delta = 0;

  auto consider = [&](Vec start) {
    Candidate c = run_power_start(A, pv, qv, std::move(start), cfg);
    total_iters += c.iterations;
    min_delta = std::min(min_delta, c.min_delta);
    if (improves(c, best)) best = std::move(c);
  };

  for (std::size_t j = 0; j < A.cols; ++j) {
    Vec e(A.cols, 0.0);
    e[j] = 1.0;
    consider(std::move(e));
  }
  consider(Vec(A.cols, 1.0));
  Rng rng(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) {
    Vec x(A.cols);
    for (double& v : x) v = rng.symmetric();
    if (leading_nonzero(x) == 0) x[0] = 1.0;
    consider(std::move(x));
  }

  canonical_sign(best.x);
  NormEstimate e;
  e.value = best.value;
  e.certificate = to_seqvec(best.x);
  e.method = Method::Power;
  e.iterations = total_iters;
  e.converged = best.converged;
  e.section = A.cols;
  e.min_ascent_step = min_delta;
  return e;
}

namespace {

struct SphereEval {
  const DenseMatrix& A;
  double p, q;
  long evals = 0;

  // x need not be normalized; returns the value at x/||x||_p.
  double operator()(Vec& x) {
    ++evals;
    if (!normalize(x, p)) return -1;
    Vec y = matvec(A, x);
    return vec_norm(y, q);
  }
};

struct BrutePoint {
  double value = -1;
  Vec x;
};

void keep_best(BrutePoint& best, double v, const Vec& x) {
  if (v > best.value) {
    best.value = v;
    best.x = x;
  }
}

// Coordinatewise pattern search on the unit sphere, used as the final
// polish after the grids have located the right basin.
void polish(SphereEval& F, BrutePoint& best) {
  if (best.value < 0) return;
  double step = 0.1;
  Vec x = best.x;
  double v = best.value;
  while (step > 1e-11) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double s : {step, -step}) {
        Vec cand = x;
        cand[i] += s;
        double cv = F(cand);
        if (cv > v) {
          v = cv;
          x = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  keep_best(best, v, x);
}

BrutePoint brute_dim1(SphereEval& F) {
  BrutePoint best;
  Vec x{1.0};
  keep_best(best, F(x), x);
  return best;
}

BrutePoint brute_dim2(SphereEval& F, int density) {
  const int n = density > 0 ? density : 512;
  const double half_pi = std::numbers::pi / 2.0;
  const double expo = 2.0 / F.p;
  BrutePoint best;
  for (double s2 : {1.0, -1.0}) {
    BrutePoint local;
    double t_at_best = 0;
    for (int i = 0; i <= n; ++i) {
      double t = half_pi * i / n;
      Vec x{std::pow(std::cos(t), expo), s2 * std::pow(std::sin(t), expo)};
      double v = F(x);
      if (v > local.value) {
        local.value = v;
        local.x = x;
        t_at_best = t;
      }
    }
    // local refinement around the best angle
    double h = half_pi / n;
    for (int round = 0; round < 45; ++round) {
      double lo = std::max(0.0, t_at_best - h);
      double hi = std::min(half_pi, t_at_best + h);
      for (int i = 0; i <= 32; ++i) {
        double t = lo + (hi - lo) * i / 32;
        Vec x{std::pow(std::cos(t), expo), s2 * std::pow(std::sin(t), expo)};
        double v = F(x);
        if (v > local.value) {
          local.value = v;
          local.x = x;
          t_at_best = t;
        }
      }
      h *= 0.55;
    }
    keep_best(best, local.value, local.x);
  }
  return best;
}

BrutePoint brute_dim3(SphereEval& F, int density) {
  const int m = density > 0 ? density : 48;
  const double inv_p = 1.0 / F.p;
  BrutePoint best;

  auto eval_w = [&](double w1, double w2, double s2, double s3, BrutePoint& b,
                    double* w_at_best) {
    double w3 = 1.0 - w1 - w2;
    if (w3 < 0) {
      if (w3 > -1e-15) {
        w3 = 0;
      } else {
        return;
      }
    }
    Vec x{std::pow(w1, inv_p), s2 * std::pow(w2, inv_p),
          s3 * std::pow(w3, inv_p)};
    double v = F(x);
    if (v > b.value) {
      b.value = v;
      b.x = std::move(x);
      if (w_at_best) {
        w_at_best[0] = w1;
        w_at_best[1] = w2;
      }
    }
  };

  const double signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (const auto& s : signs) {
    BrutePoint local;
    double wb[2] = {1.0, 0.0};
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m - i; ++j) {
        eval_w(static_cast<double>(i) / m, static_cast<double>(j) / m, s[0],
               s[1], local, wb);
      }
    }
    double h = 1.5 / m;
    for (int round = 0; round < 45; ++round) {
      double lo1 = std::max(0.0, wb[0] - h), hi1 = std::min(1.0, wb[0] + h);
      double lo2 = std::max(0.0, wb[1] - h);
      for (int i = 0; i <= 12; ++i) {
        double w1 = lo1 + (hi1 - lo1) * i / 12;
        double hi2 = std::min(1.0 - w1, wb[1] + h);
        if (hi2 < lo2) continue;
        for (int j = 0; j <= 12; ++j) {
          double w2 = lo2 + (hi2 - lo2) * j / 12;
          eval_w(w1, w2, s[0], s[1], local, wb);
        }
      }
      h *= 0.55;
    }
    keep_best(best, local.value, local.x);
  }
  return best;
}

}  // namespace

NormEstimate bruteforce_norm(const DenseMatrix& A, Exponent p, Exponent q,
                             int density) {
  if (A.cols == 0 || A.cols > 3) {
    throw std::invalid_argument(
        "bruteforce_norm handles sections of size 1..3 only");
  }
  if (A.is_zero()) return zero_estimate(A.cols, Method::BruteForce);

  SphereEval F{A, p.value(), q.value()};
  BrutePoint best;
  switch (A.cols) {
    case 1:
      best = brute_dim1(F);
      break;
    case 2:
      best = brute_dim2(F, density);
      break;
    default:
      best = brute_dim3(F, density);
      break;
  }
  polish(F, best);

  normalize(best.x, F.p);
  canonical_sign(best.x);
  NormEstimate e;
  e.value = best.value;
  e.certificate = to_seqvec(best.x);
  e.method = Method::BruteForce;
  e.iterations = static_cast<int>(std::min<long>(
      F.evals, std::numeric_limits<int>::max()));
  e.converged = true;
  e.section = A.cols;
  return e;
}

NormEstimate diagonal_sup_norm(const OperatorSpec& T, std::size_t n) {
  if (T.kind() != OpKind::Diagonal) {
    throw std::invalid_argument("diagonal_sup_norm needs a diagonal operator");
  }
  if (T.source_p().value() > T.target_q().value()) {
    throw std::invalid_argument(
        "sup-entry formula is only valid for p <= q");
  }
  if (n == 0) throw std::invalid_argument("section size must be >= 1");
  std::size_t arg = 1;
  double best = std::fabs(T.diag_entry(1));
  for (std::size_t i = 2; i <= n; ++i) {
    double a = std::fabs(T.diag_entry(i));
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  NormEstimate e;
  e.value = best;
  e.certificate = best == 0.0 ? SeqVec::unit(1) : SeqVec::unit(arg);
  e.method = Method::Diagonal;
  e.converged = true;
  e.section = n;
  return e;
}

LadderResult ladder_norm(const OperatorSpec& T, const SolverConfig& cfg) {
  cfg.validate();
  const double pv = T.source_p().value();
  const double qv = T.target_q().value();

  LadderResult result;
  for (std::size_t n : cfg.ladder) {
    NormEstimate e;
    if (T.kind() == OpKind::Diagonal && pv <= qv) {
      e = diagonal_sup_norm(T, n);
    } else {
      DenseMatrix A = finite_section(T, n);
      if (pv > 1.0) {
        e = power_norm(A, T.source_p(), T.target_q(), cfg);
      } else if (n <= 3) {
        e = bruteforce_norm(A, T.source_p(), T.target_q());
      } else {
        throw std::invalid_argument(
            "p = 1 sections beyond size 3 need a diagonal rule; the "
            "duality-map iteration is undefined there");
      }
      e.section = n;
    }
    result.sections.push_back(std::move(e));
  }

  // Nested sections make rung values non-decreasing; the overall estimate is
  // the largest (= last) rung, preferring the later rung on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.sections.size(); ++i) {
    if (result.sections[i].value >= result.sections[best].value - 1e-15) {
      best = i;
    }
  }
  result.overall = result.sections[best];
  result.overall.method = Method::Ladder;
  int total = 0;
  double min_delta = 0;
  for (const auto& s : result.sections) {
    total += s.iterations;
    min_delta = std::min(min_delta, s.min_ascent_step);
  }
  result.overall.iterations = total;
  result.overall.min_ascent_step = min_delta;
  return result;
}

}  // namespace normopt

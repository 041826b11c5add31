#include "normopt/lineability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "normopt/rng.hpp"

namespace normopt {

namespace {

// Family members must be interleaves of one shared base over distinct
// blocks; recover (base, blocks, coeffs) or throw.
struct FamilyShape {
  const OperatorSpec* base = nullptr;
  const Partition* partition = nullptr;
  std::vector<std::uint64_t> blocks;
};

FamilyShape family_shape(const std::vector<OperatorSpec>& family) {
  if (family.empty()) throw std::invalid_argument("family is empty");
  FamilyShape shape;
  for (const auto& member : family) {
    if (member.kind() != OpKind::Interleaved) {
      throw std::invalid_argument(
          "family members must be interleaved operators");
    }
    if (!shape.base) {
      shape.base = &member.base();
      shape.partition = &member.partition();
    }
    shape.blocks.push_back(member.block_index());
  }
  return shape;
}

OperatorSpec combine(const FamilyShape& shape,
                     const std::vector<double>& coeffs) {
  std::vector<SumTerm> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    terms.push_back({coeffs[i], shape.blocks[i]});
  }
  return OperatorSpec::disjoint_sum(*shape.base, std::move(terms),
                                    *shape.partition);
}

std::vector<std::vector<double>> coefficient_samples(std::size_t K,
                                                     int coeff_samples,
                                                     Rng& rng) {
  std::vector<std::vector<double>> combos;
  for (std::size_t k = 0; k < K; ++k) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> a(K, 0.0);
      a[k] = s;
      combos.push_back(std::move(a));
    }
  }
  for (int s = 0; s < coeff_samples; ++s) {
    std::vector<double> a(K);
    bool nonzero = false;
    for (double& v : a) {
      v = rng.symmetric();
      nonzero |= v != 0.0;
    }
    if (!nonzero) a[0] = 1.0;
    combos.push_back(std::move(a));
  }
  return combos;
}

double pow_abs(double v, double r) {
  return v == 0.0 ? 0.0 : std::pow(std::fabs(v), r);
}

SolverConfig family_solver(std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.ladder = {2, 4, 8, 16, 32, 64};
  return cfg;
}

}  // namespace

std::vector<OperatorSpec> build_attaining_family(const OperatorSpec& u,
                                                 const SeqVec& x0, int K,
                                                 const Partition& P) {
  if (K < 1) throw std::invalid_argument("family size K must be >= 1");
  if (std::fabs(norm(x0, u.source_p()) - 1.0) > 1e-8) {
    throw std::invalid_argument("x0 must be a unit vector in l_p");
  }
  std::vector<OperatorSpec> family;
  for (int k = 1; k <= K; ++k) {
    family.push_back(interleave(u, static_cast<std::uint64_t>(k), P));
  }
  return family;
}

std::vector<OperatorSpec> build_nonattaining_family(const OperatorSpec& T,
                                                    int K,
                                                    const Partition& P) {
  if (K < 1) throw std::invalid_argument("family size K must be >= 1");
  std::vector<OperatorSpec> family;
  for (int k = 1; k <= K; ++k) {
    family.push_back(interleave(T, static_cast<std::uint64_t>(k), P));
  }
  return family;
}

FamilyReport verify_span_attains(const std::vector<OperatorSpec>& family,
                                 const SeqVec& x0, int coeff_samples,
                                 std::uint64_t seed) {
  FamilyShape shape = family_shape(family);
  const Exponent q = shape.base->target_q();
  const double qv = q.value();

  Rng rng(seed);
  FamilyReport report;
  report.family_size = family.size();
  report.base_op = *shape.base;
  report.combos_tested = coefficient_samples(family.size(), coeff_samples, rng);
  report.independence_ok = independence_check(family, 16);
  report.all_attain_at_x0 = true;

  const double base_at_x0_q = std::pow(norm(apply(*shape.base, x0), q), qv);
  SolverConfig cfg = family_solver(seed);

  for (const auto& a : report.combos_tested) {
    OperatorSpec combo = combine(shape, a);

    // Exact additivity on random probe vectors.
    double coeff_q = 0;
    for (double c : a) coeff_q += pow_abs(c, qv);
    for (int s = 0; s < 8; ++s) {
      std::vector<double> xs(12);
      for (double& v : xs) v = rng.symmetric();
      SeqVec x{xs};
      double lhs = std::pow(norm(apply(combo, x), q), qv);
      double rhs = coeff_q * std::pow(norm(apply(*shape.base, x), q), qv);
      double defect = std::fabs(lhs - rhs) / (1.0 + coeff_q);
      report.additivity_defect = std::max(report.additivity_defect, defect);
    }

    // The combination's norm must be reached at x0.
    double at_x0 = std::pow(coeff_q * base_at_x0_q, 1.0 / qv);
    double ladder = ladder_norm(combo, cfg).overall.value;
    double defect = std::fabs(ladder - at_x0);
    report.norm_match_defect = std::max(report.norm_match_defect, defect);
    if (defect > 1e-8) report.all_attain_at_x0 = false;
  }
  return report;
}

FamilyReport verify_span_nonattaining(const std::vector<OperatorSpec>& family,
                                      int coeff_samples, int unit_samples,
                                      std::uint64_t seed) {
  FamilyShape shape = family_shape(family);
  const Exponent p = shape.base->source_p();
  const Exponent q = shape.base->target_q();
  const double qv = q.value();

  Rng rng(seed);
  FamilyReport report;
  report.family_size = family.size();
  report.base_op = *shape.base;
  report.combos_tested = coefficient_samples(family.size(), coeff_samples, rng);
  report.independence_ok = independence_check(family, 16);
  report.none_attain = true;
  report.min_strict_gap = std::numeric_limits<double>::infinity();
  report.near_attainment_shortfall = -std::numeric_limits<double>::infinity();

  SolverConfig cfg = family_solver(seed);
  LadderResult base_ladder = ladder_norm(*shape.base, cfg);
  const double member_norm = base_ladder.overall.value;

  // Sample unit vectors strictly inside the final section so the section
  // optimum stays out of reach of any sample.
  const std::size_t sample_dim = std::max<std::size_t>(2, cfg.ladder.back() / 2);

  for (const auto& a : report.combos_tested) {
    OperatorSpec combo = combine(shape, a);
    double coeff_q = 0;
    for (double c : a) coeff_q += pow_abs(c, qv);
    if (coeff_q == 0.0) continue;

    // (i) combined-norm additivity through the ladder solver.
    double expected = std::pow(coeff_q, 1.0 / qv) * member_norm;
    double combined = ladder_norm(combo, cfg).overall.value;
    report.norm_match_defect = std::max(report.norm_match_defect,
                                        std::fabs(combined - expected));

    for (int s = 0; s < 4; ++s) {
      std::vector<double> xs(12);
      for (double& v : xs) v = rng.symmetric();
      SeqVec x{xs};
      double lhs = std::pow(norm(apply(combo, x), q), qv);
      double rhs = coeff_q * std::pow(norm(apply(*shape.base, x), q), qv);
      double defect = std::fabs(lhs - rhs) / (1.0 + coeff_q);
      report.additivity_defect = std::max(report.additivity_defect, defect);
    }

    // (ii) strict gap on sampled unit vectors.
    for (int s = 0; s < unit_samples; ++s) {
      std::vector<double> xs(sample_dim);
      for (double& v : xs) v = rng.symmetric();
      SeqVec x{xs};
      double xn = norm(x, p);
      if (xn == 0.0) continue;
      x *= 1.0 / xn;
      double reached = norm(apply(combo, x), q);
      double gap = combined - reached;
      report.min_strict_gap = std::min(report.min_strict_gap, gap);
      if (gap <= 0) report.none_attain = false;
    }

    // (iii) the near-attainment sequence: one base near-maximizer serves
    // every member because the family shares its base.
    for (int n = 1; n <= 8; ++n) {
      double target = member_norm - 1.0 / n;
      const SeqVec* witness = nullptr;
      for (const auto& rung : base_ladder.sections) {
        if (rung.value >= target) {
          witness = &rung.certificate;
          break;
        }
      }
      if (!witness) continue;
      double reached = norm(apply(combo, *witness), q);
      double guaranteed =
          std::pow(coeff_q * pow_abs(std::max(target, 0.0), qv), 1.0 / qv);
      report.near_attainment_shortfall = std::max(
          report.near_attainment_shortfall, guaranteed - reached);
    }
  }
  if (!std::isfinite(report.near_attainment_shortfall)) {
    report.near_attainment_shortfall = 0;
  }
  return report;
}

bool independence_check(const std::vector<OperatorSpec>& family,
                        int probe_count) {
  if (family.empty()) throw std::invalid_argument("family is empty");
  if (probe_count < 1) throw std::invalid_argument("probe_count must be >= 1");

  for (std::size_t k = 0; k < family.size(); ++k) {
    bool witness = false;
    for (int j = 1; j <= probe_count && !witness; ++j) {
      SeqVec probe = SeqVec::unit(static_cast<std::size_t>(j));
      SeqVec image = apply(family[k], probe);
      for (std::size_t i = 1; i <= image.size() && !witness; ++i) {
        if (std::fabs(image.coord(i)) <= 1e-12) continue;
        double others = 0;
        for (std::size_t m = 0; m < family.size(); ++m) {
          if (m == k) continue;
          others += std::fabs(apply(family[m], probe).coord(i));
        }
        if (others <= 1e-14) witness = true;
      }
    }
    if (!witness) return false;
  }
  return true;
}

}  // namespace normopt

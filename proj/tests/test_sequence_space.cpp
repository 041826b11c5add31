#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "normopt/rng.hpp"
#include "normopt/sequence_space.hpp"

using namespace normopt;

namespace {

SeqVec random_vec(Rng& rng, std::size_t max_len) {
  std::vector<double> c(1 + rng.below(max_len));
  for (double& v : c) v = 4.0 * rng.symmetric();
  return SeqVec(std::move(c));
}

}  // namespace

TEST_CASE("lp norm on pinned values") {
  CHECK(norm(SeqVec{3, 4}, Exponent(2)) == doctest::Approx(5).epsilon(1e-14));
  CHECK(norm(SeqVec::unit(7), Exponent(3.7)) == 1.0);
  CHECK(norm(SeqVec{1, 1}, Exponent(1)) == 2.0);
  CHECK(norm(SeqVec{}, Exponent(2)) == 0.0);
}

TEST_CASE("norm homogeneity on random inputs") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    SeqVec x = random_vec(rng, 9);
    double c = 5.0 * rng.symmetric();
    double r = 1.0 + rng.range(0.0, 4.0);
    double lhs = norm(x * c, Exponent(r));
    double rhs = std::fabs(c) * norm(x, Exponent(r));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("sup norm") {
  CHECK(sup_norm(SeqVec{1, -5, 2}) == 5.0);
  CHECK(sup_norm(SeqVec{}) == 0.0);
  CHECK(sup_norm(SeqVec::unit(3)) == 1.0);
}

TEST_CASE("rearrangement basics") {
  CHECK(rearrange(SeqVec{0, -3, 1, 2}) == SeqVec{3, 2, 1, 0});
  SeqVec fixed{5, 4, 1, 0.5};
  CHECK(rearrange(fixed) == fixed);
  CHECK(rearrange(SeqVec{1, 1, -1}) == SeqVec{1, 1, 1});
}

TEST_CASE("rearrangement preserves norms and is idempotent") {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    SeqVec x = random_vec(rng, 10);
    SeqVec sx = rearrange(x);
    CHECK(rearrange(sx) == sx);
    for (double r : {1.0, 1.5, 2.0, 3.0, 6.0}) {
      CHECK(norm(sx, Exponent(r)) ==
            doctest::Approx(norm(x, Exponent(r))).epsilon(1e-12));
    }
    CHECK(sup_norm(sx) == doctest::Approx(sup_norm(x)));
  }
}

TEST_CASE("duality map on pinned values") {
  CHECK(duality_map(SeqVec{2, -3}, Exponent(2)) == SeqVec{2, -3});
  CHECK(duality_map(SeqVec{4, -9}, Exponent(1)) == SeqVec{1, -1});
  CHECK(duality_map(SeqVec{2, 0, -2}, Exponent(3)) == SeqVec{4, 0, -4});
}

TEST_CASE("duality map consistency <J_r(y), y> = ||y||_r^r") {
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    SeqVec y = random_vec(rng, 8);
    double r = 1.0 + rng.range(0.0, 4.0);
    double lhs = inner(duality_map(y, Exponent(r)), y);
    double rhs = std::pow(norm(y, Exponent(r)), r);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("exponent domain") {
  CHECK_THROWS_AS(Exponent(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Exponent(2e6), std::invalid_argument);
  CHECK_THROWS_AS(Exponent(1).conjugate(), std::invalid_argument);
  CHECK(Exponent(2).conjugate().value() == doctest::Approx(2));
  CHECK(Exponent(1.5).conjugate().value() == doctest::Approx(3));
  CHECK(Exponent(4).conjugate().value() == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("seqvec invariants") {
  CHECK_THROWS_AS((SeqVec{1.0, std::nan("")}), std::invalid_argument);
  SeqVec a{1, 2, 0, 0};
  SeqVec b{1, 2};
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a != SeqVec{1, 2, 3});
  CHECK(SeqVec{0, 0}.is_zero());
  CHECK(SeqVec{0, 1}.leading_nonzero() == 2);
  CHECK(SeqVec{1, -3, 3}.argmax_abs() == 2);  // ties go to the lowest index
}

TEST_CASE("phi: the r = 2 identity and the asymptote") {
  CHECK(phi(Exponent(2), 5) == doctest::Approx(2).epsilon(1e-12));
  CHECK(phi(Exponent(2), -10) == doctest::Approx(2).epsilon(1e-12));
  // phi_3(100) = (100^3 - 99^3 - 1)/99^2 = 29700/9801
  CHECK(phi(Exponent(3), 100) == doctest::Approx(29700.0 / 9801.0));
  CHECK(std::fabs(phi(Exponent(3), 100) - 3.0) < 0.05);
  CHECK_THROWS_AS(phi(Exponent(3), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(phi(Exponent(1), 5.0), std::invalid_argument);
}

TEST_CASE("splitting bound constants satisfy the inequality") {
  auto violation = [](double r, double eps, double lo, double hi, int n) {
    SplittingConstants c = splitting_bound_constants(Exponent(r), eps);
    double worst = -1;
    for (int i = 0; i <= n; ++i) {
      double X = lo + (hi - lo) * i / n;
      double lhs = std::fabs(std::pow(std::fabs(X), r) -
                             std::pow(std::fabs(X - 1.0), r) - 1.0);
      double rhs = c.C * std::pow(std::fabs(X - 1.0), r - 1.0) + c.delta;
      worst = std::max(worst, lhs - rhs);
    }
    return worst;
  };

  SUBCASE("r = 2: C at least the exact constant 2") {
    SplittingConstants c = splitting_bound_constants(Exponent(2), 0.5);
    CHECK(c.C >= 2.0);
    CHECK(violation(2, 0.5, -100, 100, 4000) <= 0.0);
  }
  SUBCASE("r = 3, eps = 0.1 at pinned points") {
    SplittingConstants c = splitting_bound_constants(Exponent(3), 0.1);
    for (double X : {-50.0, 0.0, 0.95, 1.05, 2.0, 50.0}) {
      double lhs = std::fabs(std::pow(std::fabs(X), 3.0) -
                             std::pow(std::fabs(X - 1.0), 3.0) - 1.0);
      double rhs = c.C * std::pow(std::fabs(X - 1.0), 2.0) + c.delta;
      CHECK(lhs <= rhs);
    }
  }
  SUBCASE("the small-r large-R case that needs the log grid") {
    CHECK(violation(1.5, 0.01, -1000, 1000, 10000) <= 0.0);
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(splitting_bound_constants(Exponent(2), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(splitting_bound_constants(Exponent(2), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(splitting_bound_constants(Exponent(1), 0.5),
                    std::invalid_argument);
  }
}

TEST_CASE("concavity inequality") {
  CHECK(concavity_check(1, 1, 0.5));
  CHECK(concavity_check(0, 7.3, 0.9));
  CHECK(concavity_check(3, 5, 0.7));
  CHECK_THROWS_AS(concavity_check(-1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(concavity_check(1, 1, 1.5), std::invalid_argument);

  Rng rng(44);
  for (int i = 0; i < 20000; ++i) {
    CHECK(concavity_check(rng.range(0, 50), rng.range(0, 50), rng.uniform()));
  }
}

TEST_CASE("interpolation bound") {
  SUBCASE("unit vector: equality") {
    InterpolationBound b = interpolation_bound(SeqVec::unit(1), Exponent(2), 1);
    CHECK(b.lhs == doctest::Approx(1));
    CHECK(b.rhs == doctest::Approx(1));
  }
  SUBCASE("flat vector: equality at sqrt(2)") {
    InterpolationBound b = interpolation_bound(SeqVec{1, 1}, Exponent(1), 1);
    CHECK(b.lhs == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.rhs == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("pinned example") {
    InterpolationBound b =
        interpolation_bound(SeqVec{1, 0.5}, Exponent(2), 2);
    CHECK(b.lhs <= b.rhs + 1e-12);
  }
  SUBCASE("random vectors") {
    Rng rng(45);
    for (int i = 0; i < 2000; ++i) {
      SeqVec x = random_vec(rng, 10);
      double p = 1.0 + rng.range(0.0, 3.0);
      double eps = rng.range(0.01, 3.0);
      InterpolationBound b = interpolation_bound(x, Exponent(p), eps);
      CHECK(b.lhs <= b.rhs + 1e-12);
    }
  }
}

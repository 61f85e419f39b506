#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dcosc/phi.hpp"

using namespace dcosc;

namespace {
DyadicRational dy(long num, unsigned level) { return DyadicRational(mpz_class(num), level); }
}

TEST_CASE("phi at dyadics: functional-equation values") {
  PhiEvaluator p12(ExactScalar(1), ExactScalar(2));
  CHECK(p12.dyadic_q(dy(1, 1)) == mpq_class(2, 3));   // beta/(alpha+beta)
  CHECK(p12.dyadic_q(dy(3, 2)) == mpq_class(8, 9));   // lower branch at 3/4
  CHECK(p12.dyadic_q(dy(0, 0)) == 0);
  CHECK(p12.dyadic_q(dy(1, 0)) == 1);

  PhiEvaluator p33(ExactScalar(3), ExactScalar(3));
  for (long j = 0; j <= 16; ++j) {
    mpq_class want(j, 16);
    want.canonicalize();
    CHECK(p33.dyadic_q(dy(j, 4)) == want);
  }

  PhiEvaluator p21(ExactScalar(2), ExactScalar(1));
  CHECK(p21.dyadic_q(dy(1, 1)) == mpq_class(1, 3));
}

TEST_CASE("functional equation holds exactly on dyadics to level 12") {
  for (auto [a, b] : {std::pair<int, int>{2, 1}, {1, 2}, {3, 2}, {10, 1}}) {
    PhiEvaluator phi{ExactScalar(a), ExactScalar(b)};
    mpq_class s(a + b);
    for (unsigned N = 1; N <= 12; ++N) {
      for (long j = 0; j <= (1L << N); j += std::max(1L, (1L << N) / 64)) {
        DyadicRational t(mpz_class(j), N);
        mpq_class v = phi.dyadic_q(t);
        if (2 * j <= (1L << N)) {
          // phi(t) = beta/s phi(2t)
          DyadicRational t2(mpz_class(2 * j), N);
          CHECK(v == mpq_class(b) / s * phi.dyadic_q(t2));
        }
        if (2 * j >= (1L << N)) {
          // s phi(1/2 + u) = alpha phi(2u) + beta  (the rewritten lower branch)
          DyadicRational t2(mpz_class(2 * j - (1L << N)), N);
          CHECK(s * v == mpq_class(a) * phi.dyadic_q(t2) + mpq_class(b));
        }
      }
    }
  }
}

TEST_CASE("both binary representations of a dyadic give the same value") {
  PhiEvaluator phi(ExactScalar(3), ExactScalar(1));
  // 3/8 at level 3 vs level 9 (trailing zeros) -- same canonical value.
  CHECK(phi.dyadic_q(dy(3, 3)) == phi.dyadic_q(dy(3 << 6, 9)));
}

TEST_CASE("rotation symmetry: phi_{b,a}(t) = 1 - phi_{a,b}(1-t)") {
  PhiEvaluator pab(ExactScalar(3), ExactScalar(2));
  PhiEvaluator pba(ExactScalar(2), ExactScalar(3));
  unsigned N = 10;
  for (long j = 0; j <= (1L << N); j += 7) {
    DyadicRational t(mpz_class(j), N);
    DyadicRational t1(mpz_class((1L << N) - j), N);
    CHECK(pba.dyadic_q(t) == 1 - pab.dyadic_q(t1));
  }
}

TEST_CASE("strict monotonicity on sampled dyadics") {
  PhiEvaluator phi(ExactScalar::rational(5, 2), ExactScalar::rational(1, 3));
  mpq_class prev(-1);
  for (long j = 0; j <= 256; ++j) {
    mpq_class v = phi.dyadic_q(dy(j, 8));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("phi increments (the closed digit-product form)") {
  PhiEvaluator phi(ExactScalar(2), ExactScalar(1));
  // At t = 0: (beta/(alpha+beta))^j
  for (unsigned j = 1; j <= 8; ++j)
    CHECK(phi.increment(DyadicRational::zero(), j).rat() == mpq_pow_int(mpq_class(1, 3), j));
  // At t = 1 - 2^-j: (alpha/(alpha+beta))^j
  for (unsigned j = 1; j <= 8; ++j) {
    DyadicRational t(mpz_class((1L << j) - 1), j);
    CHECK(phi.increment(t, j).rat() == mpq_pow_int(mpq_class(2, 3), j));
  }
  // (2,2): every increment at level N is 2^-N
  PhiEvaluator p22(ExactScalar(2), ExactScalar(2));
  for (long j = 0; j < 32; ++j)
    CHECK(p22.increment(dy(j, 5), 5).rat() == mpq_class(1, 32));
  // Consistency with direct differences.
  for (long j = 0; j < 16; ++j) {
    DyadicRational t(mpz_class(j), 4);
    CHECK(phi.increment(t, 4).rat() == phi.dyadic_q(dy(j + 1, 4)) - phi.dyadic_q(t));
  }
}

TEST_CASE("real-argument phi with tolerance") {
  PhiEvaluator p21(ExactScalar(2), ExactScalar(1));
  CHECK(p21.value(0.0L) == 0.0L);
  CHECK(std::abs(p21.value(0.5L, 1e-12L) - 1.0L / 3.0L) < 1e-12L);
  CHECK_THROWS_AS(p21.value(1.5L, 1e-6L), DomainError);
  CHECK_THROWS(p21.value(0.5L, 0.0L));

  // Cross-construction oracle: digital sum at a level-20 dyadic vs tolerance path.
  PhiEvaluator p12(ExactScalar(1), ExactScalar(2));
  DyadicRational d = DyadicRational::nearest(0.3L, 20);
  long double ref = static_cast<long double>(p12.dyadic_q(d).get_d());
  long double lam = static_cast<long double>(p12.lambda());
  long double slack = 3.0L * powl(exp2l(-20.0L), lam);
  CHECK(std::abs(p12.value(0.3L, 1e-9L) - ref) <= 1e-9L + slack);
}

TEST_CASE("iterative construction converges at the contraction rate") {
  PhiEvaluator p31(ExactScalar(3), ExactScalar(1));
  long double rate = 3.0L / 4.0L;
  for (unsigned k : {4u, 8u, 12u}) {
    long double bound = powl(rate, static_cast<long double>(k)) * 2.0L;
    for (long j = 0; j <= 64; ++j) {
      long double t = static_cast<long double>(j) / 64.0L;
      CHECK(std::abs(p31.iterative(t, k) - p31.value(t, 1e-15L)) <= bound);
    }
  }
}

TEST_CASE("integral of phi: closed form and quadrature certificate") {
  PhiEvaluator p11(ExactScalar(1), ExactScalar(1));
  CHECK(p11.integral(12).exact.rat() == mpq_class(1, 2));
  PhiEvaluator p21(ExactScalar(2), ExactScalar(1));
  auto i21 = p21.integral(16);
  CHECK(i21.exact.rat() == mpq_class(1, 3));
  CHECK(std::abs(i21.quadrature - 1.0L / 3.0L) <= i21.quadrature_bound);
  PhiEvaluator p13(ExactScalar(1), ExactScalar(3));
  auto i13 = p13.integral(16);
  CHECK(i13.exact.rat() == mpq_class(3, 4));
  CHECK(std::abs(i13.quadrature - 0.75L) <= i13.quadrature_bound);
  CHECK_THROWS_AS(PhiEvaluator(ExactScalar(-2), ExactScalar(-1)).integral(8), UnsupportedError);
}

TEST_CASE("holder profile: bounded at gamma = lambda, growing at gamma = 1") {
  PhiEvaluator p21(ExactScalar(2), ExactScalar(1));
  double lam = p21.lambda();
  auto at_lambda = p21.holder_profile(lam, 20);
  for (const auto& lv : at_lambda) {
    CHECK(lv.adjacent_sup <= 3.0 + 1e-9);
    CHECK(lv.pair_sup <= 3.0 + 1e-9);
  }
  auto at_one = p21.holder_profile(1.0, 20);
  for (const auto& lv : at_one) {
    double expected = std::exp2(static_cast<double>(lv.level) * (1.0 - lam));
    CHECK(lv.endpoint_gamma1_ratio == doctest::Approx(expected).epsilon(1e-9));
    if (lv.level > 1) CHECK(lv.adjacent_sup > at_one[lv.level - 2].adjacent_sup);
  }
  // (2,2): gamma = 1 seminorm is exactly 1 at every level.
  PhiEvaluator p22(ExactScalar(2), ExactScalar(2));
  for (const auto& lv : p22.holder_profile(1.0, 12))
    CHECK(lv.adjacent_sup == doctest::Approx(1.0));
}

TEST_CASE("probabilistic construction: empirical CDF matches phi (DKW band)") {
  PhiEvaluator p12(ExactScalar(1), ExactScalar(2));
  const std::size_t N = 200000;
  auto xs = p12.mc_samples(N, 12345);
  // sup_t |F_N(t) - phi(t)| over a grid; DKW-style band at ~1e-9 confidence.
  double eps = std::sqrt(std::log(2.0 / 1e-9) / (2.0 * static_cast<double>(N)));
  double worst = 0.0;
  for (int j = 0; j <= 512; ++j) {
    double t = static_cast<double>(j) / 512.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    double fn = static_cast<double>(it - xs.begin()) / static_cast<double>(N);
    worst = std::max(worst, std::abs(fn - static_cast<double>(p12.value(t, 1e-12L))));
  }
  CHECK(worst <= eps);
}

TEST_CASE("mixed-sign and zero parameters are rejected") {
  CHECK_THROWS_AS(PhiEvaluator(ExactScalar(1), ExactScalar(-1)), DomainError);
  CHECK_THROWS_AS(PhiEvaluator(ExactScalar(0), ExactScalar(2)), DomainError);
  // Negative pairs route through magnitudes.
  PhiEvaluator pm(ExactScalar(-1), ExactScalar(-2));
  CHECK(pm.dyadic_q(dy(1, 1)) == mpq_class(2, 3));
}

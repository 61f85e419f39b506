#include "doctest.h"

#include <random>

#include "dcosc/dyadic.hpp"
#include "dcosc/exact.hpp"
#include "dcosc/toll.hpp"

using namespace dcosc;

TEST_CASE("rational arithmetic stays rational, mixing demotes") {
  reset_demotion_count();
  ExactScalar a = ExactScalar::rational(1, 3);
  ExactScalar b = ExactScalar::rational(2, 5);
  ExactScalar c = a * b + a / b - b;
  CHECK(c.is_rational());
  CHECK(demotion_count() == 0);

  ExactScalar f = ExactScalar::floating(0.5L);
  ExactScalar mixed = a + f;
  CHECK(!mixed.is_rational());
  CHECK(demotion_count() == 1);
}

TEST_CASE("parse p/q strings and decimal literals") {
  CHECK(ExactScalar::parse("3/4").rat() == mpq_class(3, 4));
  CHECK(ExactScalar::parse("-7").rat() == mpq_class(-7));
  CHECK(ExactScalar::parse("0.25").rat() == mpq_class(1, 4));
  CHECK(ExactScalar::parse("-1.5").rat() == mpq_class(-3, 2));
  CHECK(ExactScalar::parse("10/4").rat() == mpq_class(5, 2));
  CHECK(ExactScalar::parse("3/4").str() == "3/4");
  CHECK_THROWS(ExactScalar::parse("abc"));
}

TEST_CASE("integer powers, including negative exponents") {
  CHECK(ExactScalar::rational(2, 3).pow_int(3).rat() == mpq_class(8, 27));
  CHECK(ExactScalar::rational(2, 1).pow_int(-2).rat() == mpq_class(1, 4));
  CHECK(ExactScalar(-2).pow_int(3).rat() == mpq_class(-8));
  CHECK(ExactScalar(5).pow_int(0).rat() == 1);
}

TEST_CASE("dyadic rationals: canonical form, bits, digit sum") {
  DyadicRational t(mpz_class(6), 3);  // 6/8 = 3/4
  DyadicRational c = t.canonical();
  CHECK(c.numerator == 3);
  CHECK(c.level == 2);
  CHECK(c.bit(1) == true);
  CHECK(c.bit(2) == true);
  CHECK(c.digit_sum() == 2);
  CHECK(DyadicRational::from_mpq(mpq_class(3, 4)) == t);
  CHECK_THROWS(DyadicRational::from_mpq(mpq_class(1, 3)));
  CHECK_THROWS(DyadicRational::from_mpq(mpq_class(9, 8)));
  CHECK(DyadicRational::nearest(0.3L, 4).numerator == 5);  // 5/16
}

TEST_CASE("binary digit statistics") {
  CHECK(nu_ones(std::uint64_t{0}) == 0);
  CHECK(nu_ones(std::uint64_t{13}) == 3);   // 1101
  CHECK(nu0_zeros(std::uint64_t{13}) == 1);
  CHECK(nu0_zeros(std::uint64_t{8}) == 3);  // 1000
  CHECK(nu0_zeros(std::uint64_t{0}) == 0);
  CHECK(v2_valuation(std::uint64_t{12}) == 2);
  CHECK(v2_valuation(std::uint64_t{7}) == 0);
  CHECK(floor_log2(mpz_class(1)) == 0);
  CHECK(floor_log2(mpz_class(1024)) == 10);
  CHECK(floor_log2(mpz_class(1023)) == 9);
}

TEST_CASE("toll DSL: g(1) = 0 convention, override wins, digit factors") {
  // g(n) = 1 + 1_{n odd}
  TollFunction g = TollFunction::constant(ExactScalar(1));
  g.terms.push_back(TollTerm{ExactScalar(1), 0, 2, {1}, DigitFactor::none, ExactScalar(1)});
  CHECK(g.eval(1).is_zero());
  CHECK(g.eval(2).rat() == 1);
  CHECK(g.eval(3).rat() == 2);

  g.override[3] = ExactScalar(99);
  CHECK(g.eval(3).rat() == 99);

  // -6 * 2^{nu0(n)} 1_{n odd}  (the A269589 toll shape)
  TollFunction h;
  h.terms.push_back(TollTerm{ExactScalar(-6), 0, 2, {1}, DigitFactor::pow_nu0, ExactScalar(2)});
  CHECK(h.eval(5).rat() == -12);   // nu0(101b) = 1
  CHECK(h.eval(4).is_zero());
  CHECK(h.vanishes_at_even());
  CHECK(!h.residue_polynomials(2).has_value());

  // floor(n/2) = n/2 - (1/2) 1_{odd}: not vanishing at even
  TollFunction fl;
  fl.terms.push_back(TollTerm{ExactScalar::rational(1, 2), 1, 1, {0}, DigitFactor::none, ExactScalar(1)});
  fl.terms.push_back(
      TollTerm{ExactScalar::rational(-1, 2), 0, 2, {1}, DigitFactor::none, ExactScalar(1)});
  CHECK(fl.eval(7).rat() == 3);
  CHECK(fl.eval(8).rat() == 4);
  CHECK(!fl.vanishes_at_even());
  auto pat = fl.residue_polynomials(2);
  REQUIRE(pat.has_value());
  CHECK((*pat)[0].eval(mpq_class(10)) == 5);
  CHECK((*pat)[1].eval(mpq_class(9)) == 4);
}

TEST_CASE("RatPoly affine composition") {
  // p(n) = n^2 - 3n + 2; p(2m) = 4m^2 - 6m + 2
  RatPoly p({mpq_class(2), mpq_class(-3), mpq_class(1)});
  RatPoly q = p.compose_affine(mpq_class(2), mpq_class(0));
  CHECK(q.coeff(2) == 4);
  CHECK(q.coeff(1) == -6);
  CHECK(q.coeff(0) == 2);
  RatPoly r = p.compose_affine(mpq_class(1, 2), mpq_class(-1, 2));  // p((n-1)/2)
  CHECK(r.eval(mpq_class(9)) == p.eval(mpq_class(4)));
}

#include "dcosc/dyadic.hpp"

#include <cmath>

namespace dcosc {

DyadicRational DyadicRational::from_mpq(const mpq_class& q) {
  if (sgn(q) < 0 || q > 1) throw std::domain_error("DyadicRational: outside [0,1]");
  const mpz_class& den = q.get_den();
  size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
  unsigned level = static_cast<unsigned>(bits - 1);
  if (den != mpz_pow_uint(2, level))
    throw std::domain_error("DyadicRational: denominator is not a power of two");
  return DyadicRational(q.get_num(), level);
}

DyadicRational DyadicRational::nearest(long double t, unsigned level) {
  if (t < 0.0L || t > 1.0L) throw std::domain_error("DyadicRational: outside [0,1]");
  if (t == 0.0L) return DyadicRational(0, level);
  // t = m * 2^(e-64) exactly, m < 2^64; round m * 2^(level+e-64).
  int e = 0;
  long double fr = frexpl(t, &e);
  auto m = static_cast<unsigned long long>(ldexpl(fr, 64));
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof m, 0, 0, &m);
  int shift = static_cast<int>(level) + e - 64;
  if (shift >= 0) {
    num <<= shift;
  } else {
    mpz_class half = mpz_pow_uint(2, static_cast<unsigned>(-shift - 1));
    num = (num + half) >> static_cast<unsigned>(-shift);
  }
  mpz_class cap = mpz_pow_uint(2, level);
  if (num > cap) num = cap;
  return DyadicRational(num, level);
}

DyadicRational DyadicRational::canonical() const {
  if (is_zero()) return DyadicRational(0, 0);
  mpz_class num = numerator;
  unsigned lvl = level;
  while (lvl > 0 && mpz_even_p(num.get_mpz_t())) {
    num >>= 1;
    --lvl;
  }
  return DyadicRational(num, lvl);
}

unsigned floor_log2(const mpz_class& n) {
  if (sgn(n) <= 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2) - 1);
}

}  // namespace dcosc

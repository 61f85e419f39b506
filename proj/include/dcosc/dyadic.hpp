#pragma once

// Dyadic rationals j/2^N in [0,1]: the points where the interpolation
// function and the periodic fluctuations are exactly computable.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

#include "dcosc/exact.hpp"

namespace dcosc {

struct DyadicRational {
  mpz_class numerator;  // 0 <= numerator <= 2^level
  unsigned level = 0;

  DyadicRational() : numerator(0) {}
  DyadicRational(mpz_class num, unsigned lvl) : numerator(std::move(num)), level(lvl) {
    if (sgn(numerator) < 0) throw std::domain_error("DyadicRational: negative numerator");
    if (numerator > mpz_pow_uint(2, level)) throw std::domain_error("DyadicRational: value > 1");
  }
  static DyadicRational zero() { return DyadicRational(); }
  static DyadicRational one() { return DyadicRational(1, 0); }

  // Fails unless q is in [0,1] with a power-of-two denominator.
  static DyadicRational from_mpq(const mpq_class& q);

  // Nearest level-N dyadic to a real t in [0,1].
  static DyadicRational nearest(long double t, unsigned level);

  mpq_class to_mpq() const {
    mpq_class q(numerator, mpz_pow_uint(2, level));
    q.canonicalize();
    return q;
  }
  long double approx() const { return static_cast<long double>(to_mpq().get_d()); }

  // Strip trailing zero bits so the numerator is odd (or the value is 0).
  DyadicRational canonical() const;

  bool is_zero() const { return sgn(numerator) == 0; }
  bool is_one() const { return numerator == mpz_pow_uint(2, level); }

  // Bit b_j in t = sum b_j 2^-j, j = 1..level.
  bool bit(unsigned j) const {
    if (j < 1 || j > level) throw std::out_of_range("DyadicRational::bit");
    return mpz_tstbit(numerator.get_mpz_t(), level - j) != 0;
  }
  // Number of 1 bits among b_1..b_level (the digit sum of t).
  unsigned digit_sum() const {
    return static_cast<unsigned>(mpz_popcount(numerator.get_mpz_t()));
  }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.to_mpq() == b.to_mpq();
  }
  friend bool operator<(const DyadicRational& a, const DyadicRational& b) {
    return a.to_mpq() < b.to_mpq();
  }
};

// floor(log2(n)) for n >= 1; L_0 := 0.
unsigned floor_log2(const mpz_class& n);
inline unsigned floor_log2_u64(std::uint64_t n) {
  unsigned l = 0;
  while (n >>= 1) ++l;
  return l;
}

}  // namespace dcosc

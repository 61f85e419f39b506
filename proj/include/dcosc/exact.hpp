#pragma once

// Dual numeric tower: exact rational (GMP) when every input is rational,
// high-precision binary float (long double, 64-bit significand on x86-64)
// otherwise. Mixing demotes to float; demotions are counted so tests can
// assert that an "exact" pipeline never left rational mode.

#include <gmpxx.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace dcosc {

std::uint64_t demotion_count();
void reset_demotion_count();
void note_demotion();

class ExactScalar {
 public:
  ExactScalar() : v_(mpq_class(0)) {}
  ExactScalar(int n) : v_(mpq_class(n)) {}
  ExactScalar(long n) : v_(mpq_class(static_cast<long>(n))) {}
  ExactScalar(long long n) : v_(mpq_class(static_cast<long>(n))) {}
  ExactScalar(const mpz_class& z) : v_(mpq_class(z)) {}
  ExactScalar(mpq_class q) : v_(std::move(q)) { rat_mut().canonicalize(); }
  static ExactScalar rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return ExactScalar(q);
  }
  static ExactScalar floating(long double x) {
    ExactScalar s;
    s.v_ = x;
    return s;
  }
  // Accepts "p", "p/q", or a decimal float literal.
  static ExactScalar parse(const std::string& text);

  bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& rat() const {
    if (!is_rational()) throw std::logic_error("ExactScalar: float value has no exact form");
    return std::get<mpq_class>(v_);
  }
  long double approx() const {
    if (is_rational()) return static_cast<long double>(mpq_get_d(rat().get_mpq_t()));
    return std::get<long double>(v_);
  }
  double approx_d() const { return static_cast<double>(approx()); }

  bool is_zero() const { return is_rational() ? sgn(rat()) == 0 : approx() == 0.0L; }
  int sign() const { return is_rational() ? sgn(rat()) : (approx() > 0) - (approx() < 0); }
  bool is_integer() const { return is_rational() && rat().get_den() == 1; }

  ExactScalar operator-() const {
    if (is_rational()) return ExactScalar(mpq_class(-rat()));
    return floating(-approx());
  }
  ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(mpq_class(a.rat() + b.rat()));
    demote(a, b);
    return floating(a.approx() + b.approx());
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(mpq_class(a.rat() - b.rat()));
    demote(a, b);
    return floating(a.approx() - b.approx());
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(mpq_class(a.rat() * b.rat()));
    demote(a, b);
    return floating(a.approx() * b.approx());
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) {
      if (sgn(b.rat()) == 0) throw std::domain_error("ExactScalar: division by zero");
      return ExactScalar(mpq_class(a.rat() / b.rat()));
    }
    demote(a, b);
    return floating(a.approx() / b.approx());
  }
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  ExactScalar pow_int(long e) const;

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rat() == b.rat();
    return a.approx() == b.approx();
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rat() < b.rat();
    return a.approx() < b.approx();
  }
  friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
  friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return !(b < a); }
  friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return !(a < b); }

  // "p/q" (or "p") in rational mode, shortest round-trip decimal otherwise.
  std::string str() const;

 private:
  static void demote(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() != b.is_rational()) note_demotion();
  }
  mpq_class& rat_mut() { return std::get<mpq_class>(v_); }
  std::variant<mpq_class, long double> v_;
};

// Exponentiation by squaring for mpq; std::pow for floats.
ExactScalar pow_scalar(const ExactScalar& base, long e);

mpq_class mpq_pow_int(const mpq_class& base, long e);
mpz_class mpz_pow_uint(const mpz_class& base, unsigned long e);

}  // namespace dcosc

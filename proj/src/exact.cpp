#include "dcosc/exact.hpp"

#include <cstdio>
#include <cstdlib>

namespace dcosc {

namespace {
std::atomic<std::uint64_t> g_demotions{0};
}

std::uint64_t demotion_count() { return g_demotions.load(); }
void reset_demotion_count() { g_demotions.store(0); }
void note_demotion() { g_demotions.fetch_add(1); }

ExactScalar ExactScalar::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("ExactScalar: empty literal");
  if (text.find_first_of(".eE") != std::string::npos &&
      text.find('/') == std::string::npos) {
    // Decimal literals with a finite expansion stay exact: 0.25 -> 1/4.
    errno = 0;
    char* end = nullptr;
    double d = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0' || errno != 0)
      throw std::invalid_argument("ExactScalar: bad literal '" + text + "'");
    mpq_class q(d);
    q.canonicalize();
    return ExactScalar(q);
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("ExactScalar: bad literal '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("ExactScalar: zero denominator");
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::pow_int(long e) const { return pow_scalar(*this, e); }

std::string ExactScalar::str() const {
  if (is_rational()) return rat().get_str();
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17Lg", approx());
  return buf;
}

mpz_class mpz_pow_uint(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpq_class mpq_pow_int(const mpq_class& base, long e) {
  if (e == 0) return mpq_class(1);
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpq_class r(mpz_pow_uint(base.get_num(), k), mpz_pow_uint(base.get_den(), k));
  r.canonicalize();
  if (inv) {
    if (sgn(r) == 0) throw std::domain_error("pow: zero to negative power");
    r = 1 / r;
  }
  return r;
}

ExactScalar pow_scalar(const ExactScalar& base, long e) {
  if (base.is_rational()) return ExactScalar(mpq_pow_int(base.rat(), e));
  return ExactScalar::floating(std::pow(base.approx(), static_cast<long double>(e)));
}

}  // namespace dcosc

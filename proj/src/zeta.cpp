#include "dcosc/zeta.hpp"

#include <cmath>

namespace dcosc {

namespace {

// B_{2j} / (2j)! for j = 1..16
const long double kBern2jOverFact[] = {
    8.3333333333333333333e-02L,  // B2/2!
    -1.3888888888888888889e-03L, // B4/4!
    3.3068783068783068783e-05L,
    -8.2671957671957671958e-07L,
    2.0876756987868098979e-08L,
    -5.2841901386874931848e-10L,
    1.3382536530684678833e-11L,
    -3.3896802963225828668e-13L,
    8.5860620562778445641e-15L,
    -2.1748686985580618730e-16L,
    5.5090028283602295152e-18L,
    -1.3954464685812523340e-19L,
    3.5347070396294674716e-21L,
    -8.9535174270375468504e-23L,
    2.2679524523376830603e-24L,
    -5.7447906688722024452e-26L,
};

}  // namespace

complexl cpow_real(long double base, const complexl& expo) {
  if (base <= 0.0L) throw std::domain_error("cpow_real: base must be positive");
  long double lb = std::log(base);
  long double mag = std::exp(expo.real() * lb);
  long double ang = expo.imag() * lb;
  return complexl(mag * std::cos(ang), mag * std::sin(ang));
}

complexl hurwitz_zeta(const complexl& s, long double a) {
  if (a <= 0.0L) throw std::domain_error("hurwitz_zeta: a > 0 required");
  if (s == complexl(1.0L, 0.0L)) throw PoleError("hurwitz_zeta: pole at s = 1");

  // Shift count: N roughly |Im s| keeps the Euler-Maclaurin correction terms
  // decaying; the envelope below is generous for |Im s| <= 200.
  long double im = std::abs(s.imag());
  unsigned N = static_cast<unsigned>(std::max(32.0L, 1.3L * im + 16.0L));

  complexl sum(0.0L, 0.0L);
  for (unsigned n = 0; n < N; ++n) sum += cpow_real(a + n, -s);

  long double x = a + N;
  complexl xs = cpow_real(x, -s);                       // (N+a)^(-s)
  sum += xs * complexl(x, 0.0L) / (s - complexl(1.0L)); // (N+a)^(1-s)/(s-1)
  sum += xs * 0.5L;

  // sum_j B_{2j}/(2j)! * (s)_(2j-1) * (N+a)^(-s-2j+1)
  complexl poch = s;            // rising factorial s(s+1)...(s+2j-2)
  complexl xpow = xs * x;       // (N+a)^(-s+1), stepped down by x^2
  for (int j = 1; j <= 16; ++j) {
    xpow /= complexl(x * x);    // (N+a)^(-s-2j+1)
    sum += kBern2jOverFact[j - 1] * poch * xpow;
    poch *= (s + complexl(static_cast<long double>(2 * j - 1))) *
            (s + complexl(static_cast<long double>(2 * j)));
  }
  return sum;
}

complexl riemann_zeta(const complexl& s) { return hurwitz_zeta(s, 1.0L); }

complexl hurwitz_zeta_diff(const complexl& s, long double a, long double b) {
  if (a <= 0.0L || b <= 0.0L) throw std::domain_error("hurwitz_zeta_diff: a, b > 0");
  complexl one_minus_s = complexl(1.0L) - s;
  if (std::abs(one_minus_s) > 1e-4L) return hurwitz_zeta(s, a) - hurwitz_zeta(s, b);
  long double im = std::abs(s.imag());
  unsigned N = static_cast<unsigned>(std::max(32.0L, 1.3L * im + 16.0L));
  complexl sum(0.0L, 0.0L);
  for (unsigned n = 0; n < N; ++n) sum += cpow_real(a + n, -s) - cpow_real(b + n, -s);
  long double xa = a + N, xb = b + N;
  // [(N+a)^(1-s) - (N+b)^(1-s)] / (s-1), stable near s = 1 by the exp series
  long double la = std::log(xa), lb = std::log(xb);
  complexl t = one_minus_s;
  complexl diff(0.0L, 0.0L);
  long double fact = 1.0L;
  complexl tp(1.0L, 0.0L);
  for (int j = 1; j <= 8; ++j) {
    fact *= j;
    diff += tp * ((std::pow(la, static_cast<long double>(j)) -
                   std::pow(lb, static_cast<long double>(j))) /
                  fact);
    tp *= t;
  }
  sum -= diff;  // the /(s-1) = -(1/t) factor folded into the series
  complexl xsa = cpow_real(xa, -s), xsb = cpow_real(xb, -s);
  sum += (xsa - xsb) * 0.5L;
  complexl poch = s;
  complexl pa = xsa * xa, pb = xsb * xb;
  for (int j = 1; j <= 16; ++j) {
    pa /= complexl(xa * xa);
    pb /= complexl(xb * xb);
    sum += kBern2jOverFact[j - 1] * poch * (pa - pb);
    poch *= (s + complexl(static_cast<long double>(2 * j - 1))) *
            (s + complexl(static_cast<long double>(2 * j)));
  }
  return sum;
}

}  // namespace dcosc

#pragma once

// Hurwitz zeta(s, a) for complex s (s != 1) and real a > 0, by Euler-Maclaurin
// with the term count tied to |Im s|. Accuracy envelope: relative error
// <= 1e-12 for |Im s| <= 200 and Re s >= -2 (validated against frozen
// high-precision oracle values). Riemann zeta is the a = 1 case.

#include <complex>
#include <stdexcept>

namespace dcosc {

using complexl = std::complex<long double>;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

complexl hurwitz_zeta(const complexl& s, long double a);
complexl riemann_zeta(const complexl& s);

// zeta(s, a) - zeta(s, b): the poles cancel, so this is finite (and
// computed stably) also at s = 1.
complexl hurwitz_zeta_diff(const complexl& s, long double a, long double b);

// exp2(-s), exp(s log 2), complex powers with real positive base
complexl cpow_real(long double base, const complexl& expo);

}  // namespace dcosc

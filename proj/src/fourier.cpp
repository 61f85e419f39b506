#include "dcosc/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace dcosc {

namespace {

constexpr long double kLn2 = 0.69314718055994530942L;
constexpr long double kPi = 3.14159265358979323846L;

long double ld(const mpq_class& q) { return static_cast<long double>(q.get_d()); }

// int_n^{n+1} u^-w du; handles the w = 1 logarithm case.
complexl ipow_interval(long double n, const complexl& w) {
  complexl wm1 = w - complexl(1.0L);
  if (std::abs(wm1.real()) < 1e-13L && std::abs(wm1.imag()) < 1e-13L)
    return complexl(std::log((n + 1.0L) / n), 0.0L);
  return (cpow_real(n, -wm1) - cpow_real(n + 1.0L, -wm1)) / wm1;
}

}  // namespace

complexl FourierSeries::synthesize_c(long double t) const {
  complexl acc(0.0L, 0.0L);
  for (const auto& [k, c] : coeffs) {
    long double freq = kind == PeriodicKind::antiperiodic
                           ? (2.0L * k + 1.0L) * kPi * t
                           : 2.0L * kPi * static_cast<long double>(k) * t;
    acc += c.value * complexl(std::cos(freq), std::sin(freq));
  }
  return acc;
}

FourierEngine::FourierEngine(const ClosedForm& cf) : cf_(cf) {
  const auto& dec = cf.dec();
  ExactScalar a = dec.start_normalized.alpha.abs();
  ExactScalar b = dec.start_normalized.beta.abs();
  equal_ = (a == b);
  signed_sum_ = dec.start_normalized.coeff_sum().rat();
  rho_ = static_cast<long double>(dec.rho);

  // Dirichlet series of the pre-log reduced toll (poly part removed, the
  // resonant mu n^k term kept: the closed route's finite value handles it).
  TollFunction prelog = dec.residual.toll;
  if (cf.resonant())
    prelog.terms.push_back(TollTerm{ExactScalar(dec.log_coefficient),
                                    static_cast<unsigned>(dec.resonant_degree), 1, {0},
                                    DigitFactor::none, ExactScalar(1)});
  if (!prelog.has_digit_factors() && prelog.all_rational()) dseries_.emplace(prelog);

  // Moments of phi about 1/2 (alpha != beta interval integrals).
  mpq_class aq = a.is_rational() ? a.rat() : mpq_class(a.approx_d());
  mpq_class bq = b.is_rational() ? b.rat() : mpq_class(b.approx_d());
  mpq_class S = aq + bq;
  const unsigned J = 40;
  std::vector<mpq_class> M(J + 1);
  for (unsigned j = 0; j <= J; ++j) {
    // M_j (1 - 2^-(j+1)) = (a/S) 2^-(j+1) sum_{i<j} C(j,i) M_i
    //                      + (b/S) 2^-(j+1) (2^(j+1)-1)/(j+1)
    mpq_class pow2 = mpq_pow_int(mpq_class(2), static_cast<long>(j) + 1);
    mpq_class rhs = (bq / S) / pow2 * (pow2 - 1) / mpq_class(static_cast<long>(j) + 1);
    for (unsigned i = 0; i < j; ++i) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), j, i);
      rhs += (aq / S) / pow2 * mpq_class(binom) * M[i];
    }
    M[j] = rhs / (1 - mpq_class(1) / pow2);
  }
  central_moments_.assign(J + 1, mpq_class(0));
  for (unsigned j = 0; j <= J; ++j) {
    mpq_class m(0);
    for (unsigned i = 0; i <= j; ++i) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), j, i);
      m += mpq_class(binom) * M[i] * mpq_pow_int(mpq_class(-1, 2), static_cast<long>(j - i));
    }
    central_moments_[j] = m;
  }
}

const DirichletD& FourierEngine::dirichlet() const {
  if (!dseries_) throw UnsupportedError("no Dirichlet series for this toll");
  return *dseries_;
}

complexl FourierEngine::chi(int k) const {
  long double im = cf_.antiperiodic() ? (2.0L * k + 1.0L) * kPi / kLn2
                                      : 2.0L * kPi * static_cast<long double>(k) / kLn2;
  return complexl(0.0L, im);
}

complexl FourierEngine::z_of(int k) const { return complexl(rho_, 0.0L) + chi(k); }

FourierCoeff FourierEngine::coeff_equal(int k) const {
  if (!equal_) throw UnsupportedError("closed zeta formula requires alpha = beta");
  if (!dseries_) throw UnsupportedError("closed zeta formula needs a digit-free toll");
  long double f1 = static_cast<long double>(cf_.dec().residual.f1().approx());
  auto G = [&](const complexl& w) {
    return dseries_->value(w - complexl(1.0L)) / (w * (w - complexl(1.0L)));
  };
  FourierCoeff out;
  out.method = CoeffMethod::zeta_closed;
  complexl z = z_of(k);
  // The f(1) term is the elementary second integral; its closed form is
  // robust at the exceptional points z in {0, 1}.
  complexl f1term = f1 * second_integral_closed(z) / kLn2;
  bool k0_real = !cf_.antiperiodic() && k == 0;
  bool regular = !k0_real || (std::abs(rho_) > 1e-9L && std::abs(rho_ - 1.0L) > 1e-9L &&
                              !dseries_->is_pole(complexl(rho_ - 1.0L)));
  if (regular) {
    out.value = G(z) / kLn2 + f1term;
    out.bound = 1e-12L * (1.0L + std::abs(out.value));
    return out;
  }
  // k = 0 at a pole of the D-quotient (resonant tolls, the rho in {0,1}
  // exceptional pairs): take the finite value by a symmetric limit with two
  // Richardson steps (the odd Laurent orders cancel, h^2 and h^4 are
  // extrapolated away).
  auto F = [&](long double h) { return (G(complexl(rho_ + h)) + G(complexl(rho_ - h))) / 2.0L; };
  long double h = 1.0L / 32.0L;
  complexl f1v = F(h), f2 = F(h / 2), f4 = F(h / 4);
  complexl r1 = (4.0L * f2 - f1v) / 3.0L;
  complexl r2 = (4.0L * f4 - f2) / 3.0L;
  complexl fv = (16.0L * r2 - r1) / 15.0L;
  out.value = fv / kLn2 + f1term;
  if (cf_.resonant()) out.value += complexl(ld(cf_.dec().log_coefficient) / 2.0L);
  out.bound = 1e-10L * (1.0L + std::abs(out.value));
  return out;
}

complexl FourierEngine::interval_phi_moment(std::uint64_t n, const complexl& z) const {
  long double cutoff = std::max(16.0L, std::abs(z.imag()));
  if (static_cast<long double>(n) >= cutoff) {
    // Taylor of (n+t)^(-z-1) about t = 1/2 against the central phi moments.
    complexl acc(0.0L, 0.0L);
    complexl coeff(1.0L, 0.0L);  // (-1)^j poch(z+1, j) / j!
    long double x = static_cast<long double>(n) + 0.5L;
    complexl xpow = cpow_real(x, -(z + complexl(1.0L)));
    for (unsigned j = 0; j < central_moments_.size(); ++j) {
      complexl term = coeff * xpow * ld(central_moments_[j]);
      acc += term;
      if (j > 4 && std::abs(term) < 1e-22L * (1.0L + std::abs(acc))) break;
      coeff *= -(z + complexl(1.0L + static_cast<long double>(j))) /
               complexl(static_cast<long double>(j) + 1.0L);
      xpow /= x;
    }
    return acc;
  }
  // Self-affinity step: J_n = 2^z [ (b/S) J_2n + (a/S) J_{2n+1}
  //                                + (b/S) int_{2n+1}^{2n+2} u^-(z+1) du ].
  long double a = cf_.phi().alpha().approx(), b = cf_.phi().beta().approx();
  long double Sm = a + b;
  complexl twoz(ld(signed_sum_), 0.0L);  // 2^z = alpha+beta exactly at chi_k
  return twoz * ((b / Sm) * interval_phi_moment(2 * n, z) +
                 (a / Sm) * interval_phi_moment(2 * n + 1, z) +
                 (b / Sm) * ipow_interval(static_cast<long double>(2 * n + 1),
                                          z + complexl(1.0L)));
}

complexl FourierEngine::tail_hurwitz(std::uint64_t from_n, const complexl& z) const {
  // Residue-class tails of sum_n [g(n) a_n + dg(n) b_n] for linear phi.
  const TollFunction& g = cf_.dec().residual.toll;
  unsigned Mm = g.pattern_modulus();
  auto pats = g.residue_polynomials(Mm);
  if (!pats) throw UnsupportedError("tail: digit-factor toll");

  // power sum helper: sum_{n >= first, n = r mod M} poly(n) (n+shift)^-w
  auto power_sum = [&](RatPoly poly, std::uint64_t first, int shift, const complexl& w) {
    complexl acc(0.0L, 0.0L);
    if (shift != 0)  // re-expand poly(n) in powers of (n+shift)
      poly = poly.compose_affine(mpq_class(1), mpq_class(-shift));
    for (int p = 0; p <= poly.degree(); ++p) {
      mpq_class c = poly.coeff(static_cast<unsigned>(p));
      if (sgn(c) == 0) continue;
      complexl wp = w - complexl(static_cast<long double>(p));
      acc += ld(c) *
             cpow_real(static_cast<long double>(Mm), complexl(static_cast<long double>(p)) - w) *
             hurwitz_zeta(wp, (static_cast<long double>(first) + shift) /
                                  static_cast<long double>(Mm));  // a may exceed 1
    }
    return acc;
  };

  complexl acc(0.0L, 0.0L);
  for (unsigned r = 0; r < Mm; ++r) {
    std::uint64_t first = from_n;
    while (first % Mm != r) ++first;
    const RatPoly& pr = (*pats)[r];
    RatPoly pnext = (*pats)[(r + 1) % Mm].compose_affine(mpq_class(1), mpq_class(1));
    RatPoly dg = pnext - pr;  // g(n+1) - g(n) as a poly in n on this class
    // a_n = (n^-z - (n+1)^-z)/z
    acc += (power_sum(pr, first, 0, z) - power_sum(pr, first, 1, z)) / z;
    // b_n = int (u-n) u^-(z+1): (n^(1-z) - (n+1)^(1-z))/(z-1) ... use the
    // antiderivative split b_n = I(n, z) - n I(n, z+1).
    complexl zm1 = z - complexl(1.0L);
    acc += (power_sum(dg, first, 0, zm1) - power_sum(dg, first, 1, zm1)) / zm1;
    // n * dg(n) as a polynomial
    std::vector<mpq_class> nc(dg.c.size() + 1, mpq_class(0));
    for (size_t p = 0; p < dg.c.size(); ++p) nc[p + 1] = dg.c[p];
    RatPoly ndgp{std::move(nc)};
    acc -= (power_sum(ndgp, first, 0, z) - power_sum(ndgp, first, 1, z)) / z;
  }
  return acc;
}

FourierEngine::SeriesValue FourierEngine::first_integral(const complexl& z,
                                                         long double tol) const {
  const bool res = cf_.resonant();
  const std::uint64_t N = res ? (std::uint64_t{1} << 15) : 4096;
  complexl acc(0.0L, 0.0L);
  long double gn = cf_.residual_toll_f(1);  // 0 by convention
  for (std::uint64_t n = 1; n < N; ++n) {
    long double gn1 = cf_.residual_toll_f(n + 1);
    long double dg = gn1 - gn;
    if (gn != 0.0L || dg != 0.0L) {
      complexl an = ipow_interval(static_cast<long double>(n), z + complexl(1.0L));
      complexl jn;
      if (equal_) {
        jn = ipow_interval(static_cast<long double>(n), z) -
             static_cast<long double>(n) * an;
      } else {
        jn = interval_phi_moment(n, z);
      }
      acc += gn * an + dg * jn;
    }
    gn = gn1;
  }
  long double bound = 0.0L;
  const TollFunction& g = cf_.dec().residual.toll;
  if (equal_ && !g.has_digit_factors()) {
    if (std::abs(z.imag()) > 1e-9L) {
      acc += tail_hurwitz(N, z);
    } else {
      // Real z can sit on poles of individual Hurwitz pieces even though
      // the assembled tail is analytic; take the symmetric limit.
      auto T = [&](long double h) {
        return (tail_hurwitz(N, z + complexl(h)) + tail_hurwitz(N, z - complexl(h))) / 2.0L;
      };
      long double h = 1.0L / 64.0L;
      complexl t1 = T(h), t2 = T(h / 2), t4 = T(h / 4);
      complexl r1 = (4.0L * t2 - t1) / 3.0L;
      complexl r2 = (4.0L * t4 - t2) / 3.0L;
      acc += (16.0L * r2 - r1) / 15.0L;
    }
    bound += 1e-11L * (1.0L + std::abs(acc));
  } else {
    // Crude tail bound from the majorant degree.
    int d = 0;
    long double C = 0.0L;
    auto pats = g.residue_polynomials(g.pattern_modulus());
    if (pats)
      for (const auto& p : *pats) {
        d = std::max(d, p.degree());
        for (const auto& c : p.c) C += std::abs(ld(c));
      }
    for (const auto& t : g.terms) C += std::abs(t.coeff.approx());
    long double expo = static_cast<long double>(d) - rho_;
    if (expo < 0)
      bound += 3.0L * C * std::pow(static_cast<long double>(N), expo) / (-expo);
    else
      bound += 1e9L;  // no certificate
  }
  if (res) {
    unsigned k = static_cast<unsigned>(cf_.dec().resonant_degree);
    long double mu = std::abs(ld(cf_.dec().log_coefficient));
    long double lg = std::log2(static_cast<long double>(N));
    bound += 2.0L * mu * (k * k * (lg + 1.0L) + 3.0L * k + 2.0L) /
             (static_cast<long double>(N) * static_cast<long double>(N));
  }
  (void)tol;
  return SeriesValue{acc, bound};
}

complexl FourierEngine::second_integral_closed(const complexl& z) const {
  if (!equal_) throw UnsupportedError("closed second integral requires alpha = beta");
  long double S = ld(signed_sum_);
  // int_1^2 [(S-1) x + (2-S)] x^(-z-1) dx, with 2^-z = 1/S exactly at chi_k.
  complexl term1, term2;
  complexl zm1 = z - complexl(1.0L);
  if (std::abs(zm1) < 1e-13L)
    term1 = complexl(kLn2);
  else
    term1 = (complexl(1.0L) - complexl(2.0L / S)) / zm1;
  if (std::abs(z) < 1e-13L)
    term2 = complexl(kLn2);
  else
    term2 = (complexl(1.0L) - complexl(1.0L / S)) / z;
  return (S - 1.0L) * term1 + (2.0L - S) * term2;
}

FourierEngine::SeriesValue FourierEngine::second_integral_series(const complexl& z,
                                                                 long double tol,
                                                                 unsigned brute_levels) const {
  // I2 = int_0^1 (1+u)^(-z-1) du + (S-1) J(1, z), J expanded level by level
  // through the self-affinity of phi; each level is O(2^-m).
  long double S = ld(signed_sum_);
  complexl base = (complexl(1.0L) - complexl(1.0L / S)) / z;
  if (std::abs(z) < 1e-13L) base = complexl(kLn2);

  long double am = cf_.phi().alpha().approx(), bm = cf_.phi().beta().approx();
  long double Sm = am + bm;
  complexl zp1 = z + complexl(1.0L);

  complexl j1(0.0L, 0.0L);
  long double bound = 0.0L;
  std::vector<long double> w{1.0L};  // node weights, level m over [2^m, 2^(m+1))
  long double last_mag = 0.0L;
  unsigned m = 0;
  unsigned levels_cap = equal_ ? std::min(brute_levels, 8u) : brute_levels;
  for (; m <= levels_cap; ++m) {
    complexl level(0.0L, 0.0L);
    std::uint64_t base_n = std::uint64_t{1} << m;
    for (std::uint64_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0.0L) continue;
      level += w[j] * S * (bm / Sm) *
               ipow_interval(static_cast<long double>(2 * (base_n + j) + 1), zp1);
    }
    j1 += level;
    last_mag = std::abs(level);
    if (last_mag < tol * 0.25L && m >= 6) {
      ++m;
      break;
    }
    std::vector<long double> w2(w.size() * 2, 0.0L);
    for (std::uint64_t j = 0; j < w.size(); ++j) {
      w2[2 * j] = w[j] * S * (bm / Sm);
      w2[2 * j + 1] = w[j] * S * (am / Sm);
    }
    w = std::move(w2);
  }
  if (equal_) {
    // Remaining levels collapse to Hurwitz differences: level m equals
    // a^{m+1}/z * (1/S) [Z(2^m+1/2) - Z(2^(m+1)+1/2) - Z(2^m+1) + Z(2^(m+1)+1)].
    long double a = S / 2.0L;
    long double apow = std::pow(std::abs(a), static_cast<long double>(m + 1));
    long double sign = (a < 0 && (m + 1) % 2 == 1) ? -1.0L : 1.0L;
    for (unsigned mm = m; mm <= 62; ++mm) {
      long double lo = std::exp2(static_cast<long double>(mm));
      complexl lvl = (hurwitz_zeta_diff(z, lo + 0.5L, 2.0L * lo + 0.5L) -
                      hurwitz_zeta_diff(z, lo + 1.0L, 2.0L * lo + 1.0L)) /
                     z * complexl(sign * apow / S);
      j1 += lvl;
      last_mag = std::abs(lvl);
      if (last_mag < tol * 1e-3L) break;
      apow *= std::abs(a);
      if (a < 0) sign = -sign;
    }
    bound += 2.0L * last_mag;
  } else {
    bound += 2.0L * last_mag;  // measured O(2^-m) constant
  }
  return SeriesValue{base + (S - 1.0L) * j1, bound};
}

FourierCoeff FourierEngine::coeff_integral(int k, long double tol) const {
  complexl z = z_of(k);
  auto first = first_integral(z, tol);
  auto second = second_integral_series(z, tol);
  long double f1 = static_cast<long double>(cf_.dec().residual.f1().approx());
  FourierCoeff out;
  out.method = CoeffMethod::integral;
  out.value = (first.value + f1 * second.value) / kLn2;
  out.bound = (first.bound + std::abs(f1) * second.bound) / kLn2;
  return out;
}

FourierCoeff FourierEngine::coeff(int k, long double tol) const {
  if (equal_ && dseries_) return coeff_equal(k);
  return coeff_integral(k, tol);
}

FourierSeries FourierEngine::series(int k_min, int k_max, bool prefer_zeta,
                                    long double tol) const {
  FourierSeries out;
  out.kind = cf_.dec().kind;
  for (int k = k_min; k <= k_max; ++k) {
    FourierCoeff c = (prefer_zeta && equal_ && dseries_) ? coeff_equal(k)
                                                         : coeff_integral(k, tol);
    out.coeffs[k] = c;
    out.truncation_bound += c.bound;
  }
  return out;
}

complexl FourierEngine::mellin_closed(const complexl& s) const {
  if (!equal_) throw UnsupportedError("Mellin closed form requires alpha = beta");
  return dirichlet().value(s - complexl(1.0L)) / (s * (s - complexl(1.0L)));
}

FourierEngine::SeriesValue FourierEngine::mellin_direct(const complexl& s,
                                                        long double tol) const {
  return first_integral(s, tol);
}

}  // namespace dcosc

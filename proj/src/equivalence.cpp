#include "dcosc/equivalence.hpp"

#include <sstream>

#include "dcosc/fourier.hpp"

namespace dcosc {

AffineToFundamental normalize_const(const ExactScalar& alpha, const ExactScalar& beta,
                                    const ExactScalar& c, const ExactScalar& f1) {
  ExactScalar s = alpha + beta;
  if (!(s > ExactScalar(1))) throw UnsupportedError("normalize_const: alpha + beta > 1 required");
  ExactScalar shift = -(c / (s - ExactScalar(1)));
  ExactScalar scale = f1 - shift;  // f2(1) + c/(a+b-1)
  AffineToFundamental out{scale, shift, scale.is_zero()};
  return out;
}

LinearReduction normalize_linear(const ExactScalar& alpha, const ExactScalar& beta,
                                 const ExactScalar& c, const ExactScalar& d,
                                 const ExactScalar& e, const ExactScalar& f1) {
  ExactScalar s = alpha + beta;
  if (!(s > ExactScalar(2))) throw UnsupportedError("normalize_linear: alpha + beta > 2 required");
  ExactScalar lin = c * ExactScalar(2) / (s - ExactScalar(2));
  ExactScalar con = d / (s - ExactScalar(1));
  ExactScalar odd_value = (alpha - beta) * c / (s - ExactScalar(2)) - d + e;
  LinearReduction out;
  out.odd_spec.alpha = alpha;
  out.odd_spec.beta = beta;
  TollFunction g;
  if (!odd_value.is_zero())
    g.terms.push_back(TollTerm{odd_value, 0, 2, {1}, DigitFactor::none, ExactScalar(1)});
  out.odd_spec.toll = g;
  out.odd_spec.initial[1] = f1 + lin + con;
  out.poly = RatPoly({con.rat(), lin.rat()});
  return out;
}

PowerFit fit_power_poly(const std::vector<mpq_class>& f_table, int rho_exponent, int degree) {
  // Unknowns: P0 and c_0..c_degree; equations f(2^j), j = 0..degree+1.
  int unknowns = degree + 2;
  if (static_cast<int>(f_table.size()) <= (1 << (unknowns - 1)))
    throw RangeError("fit_power_poly: table too short");
  std::vector<std::vector<mpq_class>> A(unknowns, std::vector<mpq_class>(unknowns + 1, 0));
  for (int j = 0; j < unknowns; ++j) {
    A[j][0] = mpq_pow_int(mpq_class(2), rho_exponent * j);
    for (int k = 0; k <= degree; ++k) A[j][k + 1] = mpq_pow_int(mpq_class(2), k * j);
    A[j][unknowns] = f_table[static_cast<size_t>(1) << j];
  }
  // Gaussian elimination, exact.
  for (int col = 0; col < unknowns; ++col) {
    int pivot = -1;
    for (int r = col; r < unknowns; ++r)
      if (sgn(A[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw DomainError("fit_power_poly: singular system (rho matches a degree?)");
    std::swap(A[col], A[pivot]);
    for (int r = 0; r < unknowns; ++r) {
      if (r == col) continue;
      mpq_class f = A[r][col] / A[col][col];
      if (sgn(f) == 0) continue;
      for (int cc = col; cc <= unknowns; ++cc) A[r][cc] -= f * A[col][cc];
    }
  }
  PowerFit out;
  out.periodic_at_zero = A[0][unknowns] / A[0][0];
  std::vector<mpq_class> coeffs(static_cast<size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) coeffs[static_cast<size_t>(k)] = A[k + 1][unknowns] / A[k + 1][k + 1];
  out.poly = RatPoly(std::move(coeffs));
  return out;
}

EquivalenceWitness periodically_equivalent(const RecurrenceSpec& a, const RecurrenceSpec& b,
                                           unsigned samples, double tol) {
  EquivalenceWitness w;
  ClosedForm ca(a), cb(b);
  w.poly_a = ca.dec().poly_part;
  w.poly_b = cb.dec().poly_part;

  // Same growth exponent is a precondition for equivalence.
  if (ca.dec().original.coeff_sum().abs() != cb.dec().original.coeff_sum().abs() ||
      ca.antiperiodic() != cb.antiperiodic()) {
    w.verdict = EquivVerdict::not_equivalent;
    w.detail = "different rho (or periodic vs antiperiodic)";
    return w;
  }

  bool exact_path = ca.dec().exact && cb.dec().exact && !ca.resonant() && !cb.resonant();
  if (exact_path) {
    w.exact = true;
    // c from the t = 0 reference (powers of two), then verified globally.
    mpq_class c(0);
    bool have_c = false;
    for (unsigned j = 0; j < 10 && !have_c; ++j) {
      mpq_class pb = cb.p_times_pow_q(std::uint64_t{1} << j);
      if (sgn(pb) != 0) {
        c = ca.p_times_pow_q(std::uint64_t{1} << j) / pb;
        have_c = true;
      }
    }
    if (!have_c || sgn(c) == 0) {
      w.verdict = EquivVerdict::inconclusive;
      w.detail = "no nonzero reference value for the scale";
      return w;
    }
    w.scale = ExactScalar(c);
    // Sample one full period: n in [2^J, 2^(J+1)) covers t in [0,1).
    unsigned J = 1;
    while ((std::uint64_t{1} << J) < samples) ++J;
    double worst = 0.0;
    for (std::uint64_t n = std::uint64_t{1} << J; n < (std::uint64_t{2} << J); ++n) {
      mpq_class diff = ca.p_times_pow_q(n) - c * cb.p_times_pow_q(n);
      if (sgn(diff) != 0) {
        worst = std::max(worst, std::abs(diff.get_d()) /
                                    std::pow(static_cast<double>(n), ca.dec().rho));
        w.verdict = EquivVerdict::not_equivalent;
      }
    }
    w.residual = worst;
    if (w.verdict != EquivVerdict::not_equivalent) w.verdict = EquivVerdict::equivalent;
    std::ostringstream os;
    os << "exact scale " << c.get_str() << " over " << samples << " samples";
    w.detail = os.str();
  } else {
    // Float path: pointwise proportionality of sampled P.
    long double c = 0.0L;
    long double pa0 = ca.p_periodic(0.0L), pb0 = cb.p_periodic(0.0L);
    if (std::abs(pb0) < 1e-13L) {
      w.verdict = EquivVerdict::inconclusive;
      w.detail = "P2(0) ~ 0: no reference scale";
      return w;
    }
    c = pa0 / pb0;
    w.scale = ExactScalar::floating(c);
    double worst = 0.0;
    for (unsigned i = 0; i < samples; ++i) {
      long double t = static_cast<long double>(i) / samples;
      worst = std::max(worst,
                       static_cast<double>(std::abs(ca.p_periodic(t) - c * cb.p_periodic(t))));
    }
    w.residual = worst;
    w.verdict = worst <= tol ? EquivVerdict::equivalent : EquivVerdict::not_equivalent;
    w.detail = "sampled proportionality";
  }

  // Fourier-side check: coefficient proportionality (coincides with the
  // pointwise kind for continuous P; reported separately).
  try {
    FourierEngine fa(ca), fb(cb);
    if (fa.equal_pair() && fb.equal_pair()) {
      long double cc = w.scale.approx();
      double worst = 0.0;
      for (int k = -5; k <= 5; ++k)
        worst = std::max(worst, static_cast<double>(std::abs(
                                    fa.coeff(k).value - cc * fb.coeff(k).value)));
      w.coeff_residual = worst;
    }
  } catch (const std::exception&) {
    // coefficient route unavailable for this pair; pointwise verdict stands
  }
  return w;
}

}  // namespace dcosc

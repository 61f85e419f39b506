#pragma once

// Fourier coefficients of the periodic fluctuation P at the frequencies
// chi_k = 2k pi i / log 2 (periodic) or chi'_k = (2k+1) pi i / log 2
// (antiperiodic), by two independent routes:
//
//   - the closed zeta/Dirichlet formula (alpha = beta):
//       P^(k) = [D(rho-1+chi_k) + (2a-1)(a-1)/a f(1)] / ((rho+chi_k)(rho-1+chi_k) log 2)
//     with the k = 0 value taken as a finite-value limit (covers the
//     exceptional a in {1/2, 1} cases and the resonant log-term tolls), and
//
//   - the defining integrals: the first integral evaluated piecewise over
//     unit intervals of the interpolated reduced toll (Hurwitz-zeta tails
//     for alpha = beta), the second by the digit-weighted series expansion
//     of the phi-moment integral.
//
// Coefficients describe the P of the *reduced* spec (polynomial and resonant
// parts removed), which is the P of the analysis reports.

#include <complex>
#include <map>
#include <optional>

#include "dcosc/closed_form.hpp"
#include "dcosc/dirichlet.hpp"
#include "dcosc/zeta.hpp"

namespace dcosc {

enum class CoeffMethod { zeta_closed, integral, series_int_phi };

struct FourierCoeff {
  complexl value{0.0L, 0.0L};
  CoeffMethod method = CoeffMethod::integral;
  long double bound = 0.0L;  // truncation bound (0 for closed forms)
};

struct FourierSeries {
  PeriodicKind kind = PeriodicKind::periodic;
  std::map<int, FourierCoeff> coeffs;  // antiperiodic: index k means k + 1/2
  long double truncation_bound = 0.0L;

  // Partial sum sum_{|k|<=K}; antiperiodic uses the e^{(2k+1) pi i t} basis.
  complexl synthesize_c(long double t) const;
  long double synthesize(long double t) const { return synthesize_c(t).real(); }
};

class FourierEngine {
 public:
  explicit FourierEngine(const ClosedForm& cf);

  // chi_k (periodic) or chi'_k (antiperiodic), as a complex value.
  complexl chi(int k) const;
  bool equal_pair() const { return equal_; }

  // Closed zeta route; requires alpha == beta (either sign).
  FourierCoeff coeff_equal(int k) const;
  // Integral route (c4): first integral + second integral.
  FourierCoeff coeff_integral(int k, long double tol = 1e-10L) const;
  // auto: zeta route when available, else integral.
  FourierCoeff coeff(int k, long double tol = 1e-10L) const;

  FourierSeries series(int k_min, int k_max, bool prefer_zeta,
                       long double tol = 1e-10L) const;

  // Second integral of (c4): closed antiderivative form (phi linear or via
  // the analytic continuation through 2^z = alpha+beta), and the
  // digit-weighted series form; `levels` caps the series depth.
  complexl second_integral_closed(const complexl& z) const;  // alpha == beta only
  struct SeriesValue {
    complexl value;
    long double bound;
  };
  SeriesValue second_integral_series(const complexl& z, long double tol,
                                     unsigned brute_levels = 18) const;

  // First integral of (c4) for the reduced toll.
  SeriesValue first_integral(const complexl& z, long double tol) const;

  // Mellin transform int_1^inf g(u) u^(-s-1) du of the reduced interpolated
  // toll: closed D-route (alpha = beta) and direct piecewise evaluation.
  complexl mellin_closed(const complexl& s) const;
  SeriesValue mellin_direct(const complexl& s, long double tol) const;

  const DirichletD& dirichlet() const;

 private:
  const ClosedForm& cf_;
  bool equal_;                       // |alpha| == |beta|
  mpq_class signed_sum_;             // alpha + beta (signed)
  long double rho_;
  std::optional<DirichletD> dseries_;  // of the pre-log reduced toll
  std::vector<mpq_class> central_moments_;  // of phi about 1/2

  complexl z_of(int k) const;  // rho + chi_k
  complexl interval_phi_moment(std::uint64_t n, const complexl& z) const;
  complexl tail_hurwitz(std::uint64_t from_n, const complexl& z) const;
  complexl resonant_first_part(const complexl& z, long double tol, long double* bound) const;
};

}  // namespace dcosc

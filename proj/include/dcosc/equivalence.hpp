#pragma once

// Periodic equivalence: two sequences share, up to scale and polynomial
// parts, the same periodic fluctuation. The normalization lemmas reduce
// constant and linear tolls to the fundamental solution S_{alpha,beta}.

#include <string>

#include "dcosc/closed_form.hpp"

namespace dcosc {

enum class EquivVerdict { equivalent, not_equivalent, inconclusive };

struct EquivalenceWitness {
  EquivVerdict verdict = EquivVerdict::inconclusive;
  ExactScalar scale = ExactScalar(0);  // c with P1 = c P2
  RatPoly poly_a, poly_b;              // removed polynomial parts
  bool exact = false;
  double residual = 0.0;               // max sampled |P1 - c P2| (0 in exact mode)
  double coeff_residual = -1.0;        // Fourier-coefficient proportionality check
  std::string detail;
};

// Lambda[f2] = c with f2(1) given reduces to f2 = scale S_{a,b} + shift.
struct AffineToFundamental {
  ExactScalar scale;
  ExactScalar shift;
  bool degenerate = false;  // f2(1) + c/(a+b-1) = 0: constant solution
};
AffineToFundamental normalize_const(const ExactScalar& alpha, const ExactScalar& beta,
                                    const ExactScalar& c, const ExactScalar& f1);

// Lambda[f] = c n + (d even / e odd) reduces to an odd-only toll spec plus a
// linear polynomial: f(n) = fbar(n) - 2cn/(a+b-2) - d/(a+b-1).
struct LinearReduction {
  RecurrenceSpec odd_spec;   // Lambda[fbar] = ((a-b)c/(a+b-2) - d + e) 1_odd
  RatPoly poly;              // subtracted from fbar to recover f
};
LinearReduction normalize_linear(const ExactScalar& alpha, const ExactScalar& beta,
                                 const ExactScalar& c, const ExactScalar& d,
                                 const ExactScalar& e, const ExactScalar& f1);

// Exact fit of f(2^j) = P0 2^(rho j) + sum_k c_k 2^(k j) on a power-of-two
// ladder (the Vandermonde fallback when the symbolic normalization does not
// apply); rho must be a known integer exponent distinct from 0..deg.
struct PowerFit {
  mpq_class periodic_at_zero;  // P(0)
  RatPoly poly;
};
PowerFit fit_power_poly(const std::vector<mpq_class>& f_table, int rho_exponent, int degree);

EquivalenceWitness periodically_equivalent(const RecurrenceSpec& a, const RecurrenceSpec& b,
                                           unsigned samples = 256, double tol = 1e-9);

}  // namespace dcosc

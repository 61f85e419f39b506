#pragma once

// Symbolic toll functions g(n): sums of  coeff * n^power * [n mod M in R] *
// (optional digit-weight factor), plus a finite override table for small n.
// This DSL covers every toll appearing in the fixture corpus (trigonometric
// tolls are rewritten as mod-4 residue tables, digit weights cover the
// nu/nu0/v2/(-1)^L families).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dcosc/dyadic.hpp"
#include "dcosc/exact.hpp"

namespace dcosc {

// Digit statistics of the binary expansion.
unsigned nu_ones(std::uint64_t n);           // number of 1 bits; nu(0) = 0
unsigned nu0_zeros(std::uint64_t n);         // zeros in the expansion; nu0(0) = 0
unsigned v2_valuation(std::uint64_t n);      // dyadic valuation; v2(0) := 0 (totality)
unsigned nu_ones(const mpz_class& n);
unsigned nu0_zeros(const mpz_class& n);
unsigned v2_valuation(const mpz_class& n);

enum class DigitFactor { none, pow_nu, pow_nu0, sign_len, pow_v2 };

struct TollTerm {
  ExactScalar coeff = ExactScalar(0);
  unsigned power = 0;                 // n^power
  unsigned modulus = 1;               // active iff n mod modulus in residues
  std::vector<unsigned> residues{0};  // sorted, unique, < modulus
  DigitFactor digit = DigitFactor::none;
  ExactScalar base = ExactScalar(1);  // w in w^nu(n), w^nu0(n), w^v2(n)

  bool active_at(std::uint64_t n) const;
  ExactScalar factor_at(std::uint64_t n) const;  // digit factor value
};

// Small exact polynomial, little-endian coefficients.
struct RatPoly {
  std::vector<mpq_class> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }
  static RatPoly constant(const mpq_class& v) { return RatPoly({v}); }
  static RatPoly monomial(const mpq_class& v, unsigned deg);

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  mpq_class coeff(unsigned k) const { return k < c.size() ? c[k] : mpq_class(0); }
  mpq_class eval(const mpq_class& x) const;
  mpq_class eval_u(std::uint64_t n) const { return eval(mpq_class(static_cast<unsigned long>(n))); }

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly scaled(const mpq_class& s) const;
  // p(a*x + b) as a polynomial in x.
  RatPoly compose_affine(const mpq_class& a, const mpq_class& b) const;

  std::string str(const std::string& var = "n") const;
};

struct TollFunction {
  std::vector<TollTerm> terms;
  std::map<std::int64_t, ExactScalar> override;  // wins over terms (not over g(1) := 0)

  static TollFunction zero() { return TollFunction{}; }
  static TollFunction constant(const ExactScalar& c);
  // c * n^p * 1_{n mod M in R}
  static TollFunction monomial(const ExactScalar& c, unsigned p, unsigned M = 1,
                               std::vector<unsigned> residues = {});

  // g(1) = 0 always; override wins over terms; total for n >= 0.
  ExactScalar eval(std::uint64_t n) const;
  mpq_class eval_q(std::uint64_t n) const;     // requires all_rational()
  long double eval_f(std::uint64_t n) const;

  bool all_rational() const;
  bool has_digit_factors() const;
  unsigned max_power() const;
  std::int64_t override_max_n() const;  // 0 when empty

  // lcm of {2, all term moduli}: the period of the residue structure.
  unsigned pattern_modulus() const;

  // Exact polynomial pattern per residue class mod M (M a multiple of
  // pattern_modulus()), valid for n past the override region; empty optional
  // when digit-factor terms make the pattern non-polynomial.
  std::optional<std::vector<RatPoly>> residue_polynomials(unsigned M) const;

  // True when g provably vanishes at every even n >= 2 (Example-Eodd shape:
  // Q(n) = 0 at integers). Digit-factor terms must be confined to odd
  // residues for a symbolic yes.
  bool vanishes_at_even() const;

  bool is_zero_beyond_override() const;
};

}  // namespace dcosc

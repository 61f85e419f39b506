#include "dcosc/toll.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dcosc {

unsigned nu_ones(std::uint64_t n) { return static_cast<unsigned>(__builtin_popcountll(n)); }

unsigned nu0_zeros(std::uint64_t n) {
  if (n == 0) return 0;
  return floor_log2_u64(n) + 1 - nu_ones(n);
}

unsigned v2_valuation(std::uint64_t n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(__builtin_ctzll(n));
}

unsigned nu_ones(const mpz_class& n) {
  if (sgn(n) <= 0) return 0;
  return static_cast<unsigned>(mpz_popcount(n.get_mpz_t()));
}

unsigned nu0_zeros(const mpz_class& n) {
  if (sgn(n) <= 0) return 0;
  return floor_log2(n) + 1 - nu_ones(n);
}

unsigned v2_valuation(const mpz_class& n) {
  if (sgn(n) == 0) return 0;
  return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

bool TollTerm::active_at(std::uint64_t n) const {
  unsigned r = static_cast<unsigned>(n % modulus);
  return std::binary_search(residues.begin(), residues.end(), r);
}

ExactScalar TollTerm::factor_at(std::uint64_t n) const {
  switch (digit) {
    case DigitFactor::none:
      return ExactScalar(1);
    case DigitFactor::pow_nu:
      return pow_scalar(base, nu_ones(n));
    case DigitFactor::pow_nu0:
      return pow_scalar(base, nu0_zeros(n));
    case DigitFactor::pow_v2:
      return pow_scalar(base, v2_valuation(n));
    case DigitFactor::sign_len:
      return ExactScalar((n == 0 || floor_log2_u64(n) % 2 == 0) ? 1 : -1);
  }
  return ExactScalar(1);
}

RatPoly RatPoly::monomial(const mpq_class& v, unsigned deg) {
  std::vector<mpq_class> c(deg + 1, mpq_class(0));
  c[deg] = v;
  RatPoly p(std::move(c));
  return p;
}

void RatPoly::trim() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

mpq_class RatPoly::eval(const mpq_class& x) const {
  mpq_class acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<mpq_class> r(std::max(c.size(), o.c.size()), mpq_class(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + o.scaled(mpq_class(-1)); }

RatPoly RatPoly::scaled(const mpq_class& s) const {
  std::vector<mpq_class> r = c;
  for (auto& x : r) x *= s;
  return RatPoly(std::move(r));
}

RatPoly RatPoly::compose_affine(const mpq_class& a, const mpq_class& b) const {
  // Horner in (a x + b).
  RatPoly acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    // acc = acc * (a x + b) + coeff
    std::vector<mpq_class> next(acc.c.size() + 1, mpq_class(0));
    for (size_t i = 0; i < acc.c.size(); ++i) {
      next[i + 1] += acc.c[i] * a;
      next[i] += acc.c[i] * b;
    }
    RatPoly n2(std::move(next));
    n2 = n2 + RatPoly::constant(*it);
    acc = std::move(n2);
  }
  return acc;
}

std::string RatPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    mpq_class v = coeff(k);
    if (sgn(v) == 0) continue;
    if (!first) out << (sgn(v) > 0 ? " + " : " - ");
    else if (sgn(v) < 0) out << "-";
    first = false;
    mpq_class av = abs(v);
    if (k == 0 || av != 1) out << av.get_str();
    if (k > 0) {
      if (av != 1) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

TollFunction TollFunction::constant(const ExactScalar& c) {
  if (c.is_zero()) return TollFunction{};
  TollFunction t;
  t.terms.push_back(TollTerm{c, 0, 1, {0}, DigitFactor::none, ExactScalar(1)});
  return t;
}

TollFunction TollFunction::monomial(const ExactScalar& c, unsigned p, unsigned M,
                                    std::vector<unsigned> residues) {
  TollFunction t;
  if (c.is_zero()) return t;
  if (residues.empty())
    for (unsigned r = 0; r < M; ++r) residues.push_back(r);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  t.terms.push_back(TollTerm{c, p, M, std::move(residues), DigitFactor::none, ExactScalar(1)});
  return t;
}

ExactScalar TollFunction::eval(std::uint64_t n) const {
  if (n == 1) return ExactScalar(0);
  auto it = override.find(static_cast<std::int64_t>(n));
  if (it != override.end()) return it->second;
  ExactScalar acc(0);
  for (const auto& t : terms) {
    if (!t.active_at(n)) continue;
    ExactScalar v = t.coeff;
    if (t.power > 0) v = v * pow_scalar(ExactScalar(mpz_class(static_cast<unsigned long>(n))), t.power);
    if (t.digit != DigitFactor::none) v = v * t.factor_at(n);
    acc += v;
  }
  return acc;
}

mpq_class TollFunction::eval_q(std::uint64_t n) const {
  // allocation-light path for the exact sweeps
  if (n == 1) return mpq_class(0);
  auto it = override.find(static_cast<std::int64_t>(n));
  if (it != override.end()) return it->second.rat();
  mpq_class acc(0);
  for (const auto& t : terms) {
    if (!t.active_at(n)) continue;
    mpq_class v = t.coeff.rat();
    if (t.power > 0)
      v *= mpz_pow_uint(mpz_class(static_cast<unsigned long>(n)), t.power);
    switch (t.digit) {
      case DigitFactor::none:
        break;
      case DigitFactor::pow_nu:
        v *= mpq_pow_int(t.base.rat(), nu_ones(n));
        break;
      case DigitFactor::pow_nu0:
        v *= mpq_pow_int(t.base.rat(), nu0_zeros(n));
        break;
      case DigitFactor::pow_v2:
        v *= mpq_pow_int(t.base.rat(), v2_valuation(n));
        break;
      case DigitFactor::sign_len:
        if (n != 0 && floor_log2_u64(n) % 2 == 1) v = -v;
        break;
    }
    acc += v;
  }
  return acc;
}

long double TollFunction::eval_f(std::uint64_t n) const { return eval(n).approx(); }

bool TollFunction::all_rational() const {
  for (const auto& t : terms)
    if (!t.coeff.is_rational() || !t.base.is_rational()) return false;
  for (const auto& [n, v] : override)
    if (!v.is_rational()) return false;
  return true;
}

bool TollFunction::has_digit_factors() const {
  for (const auto& t : terms)
    if (t.digit != DigitFactor::none) return true;
  return false;
}

unsigned TollFunction::max_power() const {
  unsigned p = 0;
  for (const auto& t : terms) p = std::max(p, t.power);
  return p;
}

std::int64_t TollFunction::override_max_n() const {
  return override.empty() ? 0 : override.rbegin()->first;
}

unsigned TollFunction::pattern_modulus() const {
  unsigned m = 2;
  for (const auto& t : terms) m = std::lcm(m, t.modulus);
  return m;
}

std::optional<std::vector<RatPoly>> TollFunction::residue_polynomials(unsigned M) const {
  if (has_digit_factors()) return std::nullopt;
  if (!all_rational()) return std::nullopt;
  std::vector<RatPoly> out(M);
  for (const auto& t : terms) {
    RatPoly mono = RatPoly::monomial(t.coeff.rat(), t.power);
    for (unsigned r = 0; r < M; ++r)
      if (std::binary_search(t.residues.begin(), t.residues.end(), r % t.modulus))
        out[r] = out[r] + mono;
  }
  return out;
}

bool TollFunction::vanishes_at_even() const {
  for (const auto& [n, v] : override)
    if (n >= 2 && n % 2 == 0 && !v.is_zero()) return false;
  unsigned M = pattern_modulus();
  // Digit-factor terms must avoid even residues entirely.
  for (const auto& t : terms) {
    if (t.digit == DigitFactor::none || t.coeff.is_zero()) continue;
    for (unsigned r = 0; r < M; r += 2)
      if (std::binary_search(t.residues.begin(), t.residues.end(), r % t.modulus)) return false;
  }
  // Digit-factor terms are confined to odd residues at this point; the
  // polynomial part must vanish identically on every even residue class.
  TollFunction nodigit;
  for (const auto& t : terms)
    if (t.digit == DigitFactor::none) nodigit.terms.push_back(t);
  auto pat = nodigit.residue_polynomials(M);
  if (!pat) return false;
  for (unsigned r = 0; r < M; r += 2)
    if (!(*pat)[r].is_zero()) return false;
  return true;
}

bool TollFunction::is_zero_beyond_override() const {
  auto pat = residue_polynomials(pattern_modulus());
  if (!pat) return false;
  for (const auto& p : *pat)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace dcosc

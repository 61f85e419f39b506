#include "dcosc/dirichlet.hpp"

#include <algorithm>

namespace dcosc {

DirichletD::DirichletD(const TollFunction& toll) : toll_(toll) {
  if (toll.has_digit_factors())
    throw UnsupportedError("DirichletD: digit-factor tolls have no polynomial pattern");
  unsigned M = toll.pattern_modulus();
  auto pats = toll.residue_polynomials(M);
  // Second-difference pattern per residue class r (in n):
  //   d2(r;n) = p_{r+1}(n+1) - 2 p_r(n) + p_{r-1}(n-1)
  std::vector<RatPoly> d2(M);
  for (unsigned r = 0; r < M; ++r) {
    const RatPoly& up = (*pats)[(r + 1) % M];
    const RatPoly& mid = (*pats)[r];
    const RatPoly& dn = (*pats)[(r + M - 1) % M];
    d2[r] = up.compose_affine(mpq_class(1), mpq_class(1)) - mid.scaled(mpq_class(2)) +
            dn.compose_affine(mpq_class(1), mpq_class(-1));
  }

  // The pattern is valid once n-1 clears both the override table and the
  // g(0) = g(1) = 0 conventions.
  std::uint64_t n0 = std::max<std::uint64_t>(
      3, static_cast<std::uint64_t>(toll.override_max_n()) + 2);

  auto d2_exact = [&](std::uint64_t n) {
    // g(0) := 0 and g(1) := 0 conventions are honored by eval/prefix.
    mpq_class lo = n >= 2 ? toll.eval_q(n - 1) : mpq_class(0);
    return mpq_class(toll.eval_q(n + 1) - 2 * toll.eval_q(n) + lo);
  };
  // Below n0 the exact second difference (with its conventions) is carried
  // verbatim; the polynomial tails start at n0.
  for (std::uint64_t n = 1; n < n0; ++n) {
    mpq_class d = d2_exact(n);
    if (sgn(d) != 0) prefix_.emplace_back(n, d);
  }
  for (unsigned r = 0; r < M; ++r) {
    std::uint64_t first = n0;
    while (first % M != r) ++first;
    for (int p = 0; p <= d2[r].degree(); ++p) {
      mpq_class c = d2[r].coeff(static_cast<unsigned>(p));
      if (sgn(c) == 0) continue;
      tails_.push_back(Tail{c, static_cast<unsigned>(p), M, first});
      max_degree_ = std::max(max_degree_, p);
    }
  }
}

complexl DirichletD::value(const complexl& s) const {
  complexl acc(0.0L, 0.0L);
  for (const auto& [n, d] : prefix_)
    acc += static_cast<long double>(d.get_d()) * cpow_real(static_cast<long double>(n), -s);
  for (const auto& t : tails_) {
    // sum_{j>=0} poly-power (first + jM)^(power-s)
    //   = M^(power-s) zeta(s-power, first/M)
    complexl w = s - complexl(static_cast<long double>(t.power));
    complexl z = hurwitz_zeta(w, static_cast<long double>(t.first_n) /
                                     static_cast<long double>(t.modulus));
    acc += static_cast<long double>(t.coeff.get_d()) *
           cpow_real(static_cast<long double>(t.modulus),
                     complexl(static_cast<long double>(t.power)) - s) *
           z;
  }
  return acc;
}

bool DirichletD::is_pole(const complexl& s) const {
  if (std::abs(s.imag()) > 1e-30L) return false;
  for (const auto& t : tails_)
    if (std::abs(s.real() - (static_cast<long double>(t.power) + 1.0L)) < 1e-30L) return true;
  return false;
}

complexl DirichletD::direct_sum(const complexl& s, std::uint64_t terms) const {
  complexl acc(0.0L, 0.0L);
  for (std::uint64_t n = 1; n <= terms; ++n) {
    mpq_class lo = n >= 2 ? toll_.eval_q(n - 1) : mpq_class(0);
    mpq_class d = toll_.eval_q(n + 1) - 2 * toll_.eval_q(n) + lo;
    if (sgn(d) != 0)
      acc += static_cast<long double>(d.get_d()) * cpow_real(static_cast<long double>(n), -s);
  }
  return acc;
}

}  // namespace dcosc

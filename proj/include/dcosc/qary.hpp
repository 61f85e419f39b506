#pragma once

// q-ary recurrences f(n) = sum_{0<=j<q} alpha_j f(floor((n+j)/q)) + g(n),
// their interpolation function on [0,1] (iterative construction), the exact
// finite identity at integers, and the Pascal-mod-prime application.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dcosc/recurrence.hpp"

namespace dcosc {

struct QarySpec {
  unsigned q = 2;
  std::vector<ExactScalar> alphas;               // alpha_0 .. alpha_{q-1}
  TollFunction toll;
  std::map<std::int64_t, ExactScalar> initial;   // f(1) .. f(q-1)

  ExactScalar coeff_sum() const;  // A
  double rho() const;             // log_q A
  // max_j |alpha_j| < A (the contraction condition for phi).
  bool contraction_ok() const;
  bool all_rational() const;
};

using TollCallback = std::function<ExactScalar(std::uint64_t)>;

std::vector<ExactScalar> qary_eval(const QarySpec& spec, std::int64_t n_max,
                                   const TollCallback& toll_override = nullptr);
std::vector<mpq_class> qary_eval_q(const QarySpec& spec, std::int64_t n_max);

class QaryPhi {
 public:
  explicit QaryPhi(const QarySpec& spec);
  // Exact at q-adic rationals a/q^level in [0,1] by digit descent.
  mpq_class at_qadic(const mpz_class& numerator, unsigned level) const;
  // Iterative construction, depth chosen from the contraction ratio.
  long double value(long double t, long double tol = 1e-12L) const;
  double contraction() const { return contraction_; }

 private:
  unsigned q_;
  std::vector<mpq_class> alphas_;
  mpq_class sum_;
  double contraction_;
};

// The finite identity sum at integer n (the q-ary analogue of the Lemma-3
// value): equals qary_eval(n) exactly; internally n^rho P(log_q n) - Q(n).
mpq_class qary_lemma3(const QarySpec& spec, std::uint64_t n);

// Q(n) = sum_{m>=1} A^-m g(q^m n): exact when the toll vanishes at
// multiples of q beyond the override region (finite sum), else unsupported.
mpq_class qary_q_exact(const QarySpec& spec, std::uint64_t n);

// Number of Pascal-triangle entries in rows 0..n-1 not divisible by the
// prime q, by direct row counting mod q (the brute-force oracle).
std::vector<std::uint64_t> binom_not_div(unsigned q, std::uint64_t n_max);

// The recurrence spec of that count: alpha_j = q - j, g = 0, valid n >= 0.
QarySpec binomial_spec(unsigned q);

}  // namespace dcosc

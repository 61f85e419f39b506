#pragma once

// The identity engine: continuous extension f(x), the fundamental solution
// S_{alpha,beta}, and the decomposition
//
//   f(n) = poly(n) + mu n^rho log2 n + [ n^rho P(log2 n) - Q(n) ]
//
// with P 1-periodic (1-antiperiodic for negative coefficient pairs) and
// Q(x) = sum_{m>=1} (alpha+beta)^{-m} g(2^m x) = o(x^rho).
//
// At integer arguments everything in the bracket is a finite sum over the
// exact dyadic interpolation, so the whole identity is testable at zero
// tolerance in rational mode; resonant (mu != 0) identities are carried in
// the module Q + Q log2(3) + Q log2(5) + ... where zero-ness stays decidable.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "dcosc/phi.hpp"
#include "dcosc/recurrence.hpp"

namespace dcosc {

enum class PeriodicKind { periodic, antiperiodic, discontinuous };
enum class ConvergenceVerdict { verified, violated, unknown };

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MajorantRow {
  unsigned m;
  double a_m;      // max_{2^m <= n <= 2^(m+1)} |g(n)|
  double scaled;   // 2^(-rho m) A_m
};

struct Convergence {
  ConvergenceVerdict verdict = ConvergenceVerdict::unknown;
  double ratio = 0.0;     // certified geometric ratio: 2^(-rho m) A_m <= C ratio^m
  double constant = 0.0;  // C
  bool holder_certified = false;  // condition sum 2^((1-rho)m) B_m < inf
  std::vector<MajorantRow> table;
  std::string witness;  // human-readable reason for the verdict
};

// Exact value in the Q-module spanned by {1, log2(3), log2(5), ...}.
struct LogLinear {
  mpq_class c0;
  std::map<unsigned long, mpq_class> logs;  // odd prime-free keys >= 3

  LogLinear() : c0(0) {}
  explicit LogLinear(mpq_class c) : c0(std::move(c)) {}
  static LogLinear log2_of(const mpq_class& x);  // x > 0 with 2-power-free parts odd

  bool is_zero() const;
  long double approx() const;
  LogLinear& operator+=(const LogLinear& o);
  LogLinear& operator-=(const LogLinear& o);
  LogLinear scaled(const mpq_class& s) const;
  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
};

// S_{alpha,beta}(n): Lambda[S] = 0, S(1) = 1, by the closed form
// (1 + (alpha+beta-1) phi(n/2^L - 1)) (alpha+beta)^L. Valid for negative
// pairs as a polynomial identity in (alpha, beta).
ExactScalar s_fundamental(const ExactScalar& alpha, const ExactScalar& beta, std::uint64_t n);

struct Decomposition {
  RecurrenceSpec original;
  RecurrenceSpec start_normalized;  // n0 == 2
  RecurrenceSpec residual;          // DSL part of the reduced toll, f~(1)
  RatPoly poly_part;                // a(n)
  mpq_class log_coefficient = 0;    // mu
  int resonant_degree = -1;         // k with 2^k == alpha+beta when mu != 0
  double rho = 0.0;
  double lambda = 1.0;
  PeriodicKind kind = PeriodicKind::periodic;
  bool exact = false;  // every input rational (poly extraction ran exactly)
  Convergence convergence;
};

class ClosedForm {
 public:
  explicit ClosedForm(const RecurrenceSpec& spec);

  const Decomposition& dec() const { return dec_; }
  const PhiEvaluator& phi() const { return *phi_; }
  bool antiperiodic() const { return dec_.kind == PeriodicKind::antiperiodic; }
  bool resonant() const { return sgn(dec_.log_coefficient) != 0; }

  // --- reduced toll g~(n) = g(n) - Lambda[a](n) - mu g1(n) ---------------
  mpq_class residual_toll_q(std::uint64_t n) const;       // requires mu == 0
  LogLinear residual_toll_log(std::uint64_t n) const;     // general
  long double residual_toll_f(std::uint64_t n) const;

  // --- the finite identity sum at integers -------------------------------
  // f~(n) = n^rho P(log2 n) - Q(n) as the finite phi-interpolated sum;
  // equals the recursively computed residual sequence exactly.
  mpq_class lemma3_q(std::uint64_t n) const;
  LogLinear lemma3_log(std::uint64_t n) const;
  // All of lemma3_q(1..n_max) at once, sharing the dyadic subvalues of the
  // recursive extension F(x) = S F(x/2) + g~(x).
  std::vector<mpq_class> lemma3_sweep(std::uint64_t n_max) const;

  // Q of the reduced toll at integer n, exact (finite prefix + geometric
  // tails per DSL term). Throws DivergenceError when a tail ratio >= 1.
  mpq_class q_exact(std::uint64_t n) const;

  // n^rho P(log2 n) at integer n, exact: lemma3 + Q.
  mpq_class p_times_pow_q(std::uint64_t n) const;

  // x^rho P(log2 x) at a dyadic rational x >= 1, exact. Needs integer rho,
  // mu = 0, and a reduced toll that vanishes at even integers (the upward
  // half of the bilateral sum is then finite).
  mpq_class p_times_pow_q_at(const mpq_class& x) const;

  // --- numeric evaluators -------------------------------------------------
  struct Certified {
    long double value;
    long double bound;
  };
  // Q(x) = sum_{m>=1} (alpha+beta)^(-m) g~(2^m x), truncation certified.
  Certified q_tail(long double x, long double tol = 1e-12L) const;
  // P(t) by the one-sided sum; literal for t in [0,2) (used by the
  // antiperiodic sign-law test), reduced by (anti)periodicity otherwise.
  long double p_periodic(long double t, long double tol = 1e-12L) const;
  // P0(t): the g = 0 building block (continuous, P0(0) = P0(1) = 1;
  // antiperiodic variant carries the (-1)^floor(t) factor).
  long double p0(long double t) const;

  // Continuous extension f(x), x >= 1, of the *original* sequence.
  long double extend_f(long double x) const;
  mpq_class extend_f_dyadic(const mpq_class& x) const;

  // max_n |f(n) - poly(n) - mu psi(n) - lemma3(n)|: zero in rational mode.
  struct IdentityReport {
    bool exact = false;
    bool all_zero = false;
    double max_abs = 0.0;
    std::uint64_t argmax = 0;
  };
  IdentityReport verify_identity(std::uint64_t n_max) const;

  // Oscillation of P samples on refining grids (continuity diagnostic).
  std::vector<double> continuity_oscillation(unsigned min_level, unsigned max_level) const;

 private:
  Decomposition dec_;
  std::optional<PhiEvaluator> phi_;
  mpq_class signed_sum_;                 // alpha + beta with sign
  bool rational_mode_ = false;
  mutable std::vector<mpq_class> table_q_;       // original sequence cache
  mutable std::vector<long double> table_f_;
  mutable std::map<std::pair<unsigned long, unsigned>, mpq_class> phi_memo_;
  mutable std::mutex phi_memo_mu_;

  void extract_polynomial();
  void classify();
  const std::vector<mpq_class>& table_to(std::uint64_t n) const;
  mpq_class phi_at(const mpq_class& frac) const;         // exact, handles step kinds
  long double phi_num(long double frac) const;
  mpq_class toll_ext_q(const mpq_class& x) const;        // reduced toll, interpolated
  LogLinear toll_ext_log(const mpq_class& x) const;
  long double toll_ext_f(long double x) const;
  LogLinear psi_log(const mpq_class& x, unsigned k) const;  // x^k log2 x
  long double majorant_tail(unsigned from_m) const;
};

// Lambda[p](n) for a polynomial p, split by parity: returns polynomials
// even(n), odd(n) with Lambda[p](n) = even(n) for even n, odd(n) for odd n.
std::pair<RatPoly, RatPoly> lambda_of_polynomial(const RatPoly& p, const mpq_class& alpha,
                                                 const mpq_class& beta);

Convergence classify_convergence(const RecurrenceSpec& residual_spec, double rho,
                                 const mpq_class& mu, unsigned m_max);

}  // namespace dcosc

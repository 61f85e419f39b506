#pragma once

// The recurrence f(n) = alpha f(floor(n/2)) + beta f(ceil(n/2)) + g(n) and its
// exact sequence evaluation. rho = log2(alpha+beta), or log2(|alpha|+|beta|)
// when both coefficients are negative.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "dcosc/exact.hpp"
#include "dcosc/toll.hpp"

namespace dcosc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RecurrenceSpec {
  ExactScalar alpha;
  ExactScalar beta;
  TollFunction toll;
  std::map<std::int64_t, ExactScalar> initial;  // covers 1 .. n0-1
  std::int64_t n0 = 2;                          // recurrence valid for n >= n0

  ExactScalar coeff_sum() const { return alpha + beta; }
  bool all_rational() const {
    if (!alpha.is_rational() || !beta.is_rational() || !toll.all_rational()) return false;
    for (const auto& [n, v] : initial)
      if (!v.is_rational()) return false;
    return true;
  }
  bool negative_pair() const { return alpha.sign() < 0 && beta.sign() < 0; }
  // log2(alpha+beta), log2(|alpha|+|beta|) for the negative pair.
  double rho() const;
  ExactScalar f1() const;
};

// f(1..n_max) by direct recursion, exact in rational mode. Index 0 unused.
std::vector<ExactScalar> eval_sequence(const RecurrenceSpec& spec, std::int64_t n_max);
std::vector<mpq_class> eval_sequence_q(const RecurrenceSpec& spec, std::int64_t n_max);

// f(n) - alpha f(floor(n/2)) - beta f(ceil(n/2)) from a 1-indexed table.
ExactScalar lambda_apply(const ExactScalar& alpha, const ExactScalar& beta,
                         const std::vector<ExactScalar>& f_table, std::int64_t n);
mpq_class lambda_apply_q(const mpq_class& alpha, const mpq_class& beta,
                         const std::vector<mpq_class>& f_table, std::int64_t n);

// Reverse-engineer the toll from a sequence table: override-only toll t with
// t(n) = Lambda[f](n) for 2 <= n <= n_max.
TollFunction infer_toll(const std::vector<ExactScalar>& f_table, const ExactScalar& alpha,
                        const ExactScalar& beta);

// Rewrite a spec with n0 > 2 so the recurrence holds for all n >= 2 by
// redefining g(n) := Lambda[f](n) for 2 <= n < n0. Identity for n0 == 2.
RecurrenceSpec normalize_start(const RecurrenceSpec& spec);

}  // namespace dcosc

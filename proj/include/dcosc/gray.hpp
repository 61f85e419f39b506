#pragma once

// Generating polynomials over q-ary Gray codes (non-reflected): the digit
// map kappa'_j = (kappa_j - kappa_{j+1}) mod q, the nonzero-digit count
// gamma(n) and the digit sum sigma(n), and the partial sums
// sum_{k<n} alpha^gamma(k) / alpha^sigma(k) with their q-ary recurrences.

#include <cstdint>
#include <vector>

#include "dcosc/qary.hpp"

namespace dcosc {

enum class GrayStatistic { nonzero_digits, digit_sum };

// Gray digits of n in base q (least significant first).
std::vector<unsigned> gray_digits(std::uint64_t n, unsigned q);
unsigned gray_nonzero_digits(std::uint64_t n, unsigned q);
unsigned gray_digit_sum(std::uint64_t n, unsigned q);

struct GrayResult {
  std::vector<ExactScalar> direct;      // f(n) = sum_{k<n} alpha^stat(k), n = 0..n_max
  std::vector<ExactScalar> recurrence;  // same by the q-ary recurrence
  bool match = false;                   // exact equality over the range
  double rho = 0.0;                     // log_q(1+(q-1)alpha) resp. log_q(sum alpha^j)
};
GrayResult gray_gen_poly(unsigned q, const ExactScalar& alpha, std::uint64_t n_max,
                         GrayStatistic stat);

}  // namespace dcosc

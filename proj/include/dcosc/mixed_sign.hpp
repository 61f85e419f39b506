#pragma once

// Exact facts for the mixed-sign case alpha*beta < 0. No P/Q decomposition
// is attempted (no continuous interpolation exists there); the increments
// and the values at 2^k, 2^k +- 1 have closed digit-product forms, and
// n^(-log2 max(|alpha|,|beta|)) f(n) is bounded.

#include <cstdint>
#include <vector>

#include "dcosc/recurrence.hpp"

namespace dcosc {

struct MixedSignReport {
  bool increments_ok = false;       // f(n+1)-f(n) = (a+b-1) a^(nu(n)-1) b^(nu0(n))
  bool powers_ok = false;           // f(2^k) = (a+b)^k
  bool near_powers_ok = false;      // f(2^k -+ 1) closed forms
  double scaled_sup = 0.0;          // max |f(n)| / n^(log2 max|a|,|b|)
  std::vector<double> octave_sup;   // the same per octave
};

MixedSignReport mixed_sign_facts(const ExactScalar& alpha, const ExactScalar& beta,
                                 std::int64_t n_max);

}  // namespace dcosc

#pragma once

// The min/max split recurrences
//   u(n) = min (or max) over 1 <= k <= floor(n/2) of alpha u(k) + beta u(n-k)
// with u(1) = 1, solved by full dynamic programming. In the parameter
// regions where the optimum provably sits at k = floor(n/2) the solution
// equals S_{alpha,beta}; outside, the DP reports the argmin/argmax profile
// without equality claims.

#include <cstdint>
#include <vector>

#include "dcosc/closed_form.hpp"

namespace dcosc {

enum class SplitMode { minimize, maximize };

struct MinMaxResult {
  std::vector<ExactScalar> values;     // u(1..n_max)
  std::vector<std::int64_t> arg_opt;   // optimal k per n (ties -> larger k)
  bool region_holds = false;           // the proposition's parameter region
  bool equals_fundamental = false;     // u(n) == S_{alpha,beta}(n) for all n
  std::int64_t first_mismatch = 0;     // 0 when none
};

// Region for the min recursion: (beta >= alpha and beta >= 1) or
// (alpha >= beta and alpha+beta <= 1); for max: alpha >= beta, beta <= 1,
// alpha+beta >= 1.
bool split_region_holds(const ExactScalar& alpha, const ExactScalar& beta, SplitMode mode);

MinMaxResult minmax_solve(const ExactScalar& alpha, const ExactScalar& beta,
                          std::int64_t n_max, SplitMode mode);

// The weight w(j) = alpha^(L_j - nu0(j)) beta^(nu0(j)) behind the pairing
// argument, and S(n) = 1 + (alpha+beta-1) sum_{j<n} w(j).
ExactScalar split_weight(const ExactScalar& alpha, const ExactScalar& beta, std::uint64_t j);

// The pairing maps {1..n} -> {n+1..2n} and {1..n} -> {n+2..2n+1} moving
// each element by a power of two; empty result means construction failed.
std::vector<std::uint64_t> pairing_map(std::uint64_t n, bool second_block);

}  // namespace dcosc

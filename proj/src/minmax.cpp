#include "dcosc/minmax.hpp"

namespace dcosc {

bool split_region_holds(const ExactScalar& alpha, const ExactScalar& beta, SplitMode mode) {
  ExactScalar one(1);
  if (mode == SplitMode::minimize)
    return (beta >= alpha && beta >= one) || (alpha >= beta && alpha + beta <= one);
  return alpha >= beta && beta <= one && alpha + beta >= one;
}

MinMaxResult minmax_solve(const ExactScalar& alpha, const ExactScalar& beta,
                          std::int64_t n_max, SplitMode mode) {
  if (alpha.sign() <= 0 || beta.sign() <= 0)
    throw UnsupportedError("minmax: positive parameters only");
  if (n_max < 1 || n_max > (1 << 14)) throw RangeError("minmax: n_max in [1, 2^14]");
  MinMaxResult out;
  out.values.assign(static_cast<size_t>(n_max) + 1, ExactScalar(0));
  out.arg_opt.assign(static_cast<size_t>(n_max) + 1, 0);
  out.values[1] = ExactScalar(1);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    ExactScalar best;
    std::int64_t best_k = 0;
    for (std::int64_t k = 1; k <= n / 2; ++k) {
      ExactScalar v = alpha * out.values[static_cast<size_t>(k)] +
                      beta * out.values[static_cast<size_t>(n - k)];
      bool better = best_k == 0 || (mode == SplitMode::minimize ? v <= best : v >= best);
      if (better) {  // ties resolve toward larger k (the claimed optimum)
        best = v;
        best_k = k;
      }
    }
    out.values[static_cast<size_t>(n)] = best;
    out.arg_opt[static_cast<size_t>(n)] = best_k;
  }
  out.region_holds = split_region_holds(alpha, beta, mode);
  out.equals_fundamental = true;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (!(out.values[static_cast<size_t>(n)] ==
          s_fundamental(alpha, beta, static_cast<std::uint64_t>(n)))) {
      out.equals_fundamental = false;
      out.first_mismatch = n;
      break;
    }
  }
  return out;
}

ExactScalar split_weight(const ExactScalar& alpha, const ExactScalar& beta, std::uint64_t j) {
  unsigned z = nu0_zeros(j);
  unsigned l = floor_log2_u64(j);
  return pow_scalar(alpha, static_cast<long>(l) - static_cast<long>(z)) * pow_scalar(beta, z);
}

std::vector<std::uint64_t> pairing_map(std::uint64_t n, bool second_block) {
  // h: {1..n} -> {n+1..2n} (or {n+2..2n+1}) with h(k) - k a power of two,
  // by the inductive block construction. Indices are 1-based; out[k-1].
  std::vector<std::uint64_t> out(n, 0);
  // recursive lambda over a translated window: map {lo..lo+m-1} onto
  // {lo+m..lo+2m-1} where m = size; "second" shifts the target one right.
  auto build = [&](auto&& self, std::uint64_t lo, std::uint64_t m, bool second) -> void {
    if (m == 0) return;
    // write n' = m (first) or m+1 (second) as 2^l + j
    std::uint64_t np = second ? m + 1 : m;
    unsigned l = floor_log2_u64(np);
    std::uint64_t j = np - (std::uint64_t{1} << l);
    if (j == 0) {
      // plain shift by 2^l covers the whole block (second: np = m+1 means
      // the shift is by np = 2^l as well, landing in {lo+m+1..})
      for (std::uint64_t k = 0; k < m; ++k) out[lo + k - 1] = lo + k + np;
      return;
    }
    std::uint64_t head = second ? 2 * j - 1 : 2 * j;
    for (std::uint64_t k = 0; k < head && k < m; ++k)
      out[lo + k - 1] = lo + k + (std::uint64_t{1} << (l + 1));
    if (m > head) self(self, lo + head, m - head, second);
    (void)second_block;
  };
  build(build, 1, n, second_block);
  return out;
}

}  // namespace dcosc

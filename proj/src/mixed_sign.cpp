#include "dcosc/mixed_sign.hpp"

#include <cmath>

namespace dcosc {

MixedSignReport mixed_sign_facts(const ExactScalar& alpha, const ExactScalar& beta,
                                 std::int64_t n_max) {
  if (alpha.sign() * beta.sign() >= 0)
    throw DomainError("mixed_sign_facts: alpha*beta < 0 required");
  RecurrenceSpec s;
  s.alpha = alpha;
  s.beta = beta;
  s.initial[1] = ExactScalar(1);
  auto f = eval_sequence(s, n_max);  // S_{alpha,beta}
  ExactScalar sum = alpha + beta;

  MixedSignReport rep;
  rep.increments_ok = true;
  for (std::int64_t n = 1; n < n_max; ++n) {
    ExactScalar want = (sum - ExactScalar(1)) *
                       pow_scalar(alpha, static_cast<long>(nu_ones(static_cast<std::uint64_t>(n))) - 1) *
                       pow_scalar(beta, nu0_zeros(static_cast<std::uint64_t>(n)));
    if (!(f[static_cast<size_t>(n + 1)] - f[static_cast<size_t>(n)] == want)) {
      rep.increments_ok = false;
      break;
    }
  }
  rep.powers_ok = true;
  rep.near_powers_ok = true;
  for (unsigned k = 0; (std::int64_t{1} << k) <= n_max; ++k) {
    std::int64_t p = std::int64_t{1} << k;
    if (!(f[static_cast<size_t>(p)] == pow_scalar(sum, k))) rep.powers_ok = false;
    if (k >= 1 && p - 1 >= 1) {
      ExactScalar want = pow_scalar(sum, k) - (sum - ExactScalar(1)) * pow_scalar(alpha, k - 1);
      if (!(f[static_cast<size_t>(p - 1)] == want)) rep.near_powers_ok = false;
    }
    if (p + 1 <= n_max) {
      ExactScalar want = pow_scalar(sum, k) + (sum - ExactScalar(1)) * pow_scalar(beta, k);
      if (!(f[static_cast<size_t>(p + 1)] == want)) rep.near_powers_ok = false;
    }
  }
  double expo = std::log2(std::max(std::abs(alpha.approx_d()), std::abs(beta.approx_d())));
  double worst = 0.0;
  unsigned oct = 0;
  double oworst = 0.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (n == (std::int64_t{2} << oct)) {
      rep.octave_sup.push_back(oworst);
      oworst = 0.0;
      ++oct;
    }
    double v = std::abs(f[static_cast<size_t>(n)].approx_d()) /
               std::pow(static_cast<double>(n), expo);
    worst = std::max(worst, v);
    oworst = std::max(oworst, v);
  }
  rep.octave_sup.push_back(oworst);
  rep.scaled_sup = worst;
  return rep;
}

}  // namespace dcosc

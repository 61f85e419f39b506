#include "dcosc/gray.hpp"

#include <cmath>

namespace dcosc {

std::vector<unsigned> gray_digits(std::uint64_t n, unsigned q) {
  std::vector<unsigned> base;
  while (n > 0) {
    base.push_back(static_cast<unsigned>(n % q));
    n /= q;
  }
  std::vector<unsigned> out(base.size());
  for (size_t j = 0; j < base.size(); ++j) {
    unsigned next = j + 1 < base.size() ? base[j + 1] : 0;
    out[j] = (base[j] + q - next % q) % q;
  }
  return out;
}

unsigned gray_nonzero_digits(std::uint64_t n, unsigned q) {
  unsigned c = 0;
  for (unsigned d : gray_digits(n, q))
    if (d != 0) ++c;
  return c;
}

unsigned gray_digit_sum(std::uint64_t n, unsigned q) {
  unsigned c = 0;
  for (unsigned d : gray_digits(n, q)) c += d;
  return c;
}

GrayResult gray_gen_poly(unsigned q, const ExactScalar& alpha, std::uint64_t n_max,
                         GrayStatistic stat) {
  if (alpha.sign() <= 0) throw DomainError("gray: alpha > 0 required");
  GrayResult out;
  auto statistic = [&](std::uint64_t k) {
    return stat == GrayStatistic::nonzero_digits ? gray_nonzero_digits(k, q)
                                                 : gray_digit_sum(k, q);
  };
  out.direct.resize(static_cast<size_t>(n_max) + 1, ExactScalar(0));
  ExactScalar acc(0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    acc += pow_scalar(alpha, statistic(n - 1));
    out.direct[static_cast<size_t>(n)] = acc;
  }

  // The q-ary recurrence: coefficients and the cross-term toll.
  QarySpec spec;
  spec.q = q;
  if (stat == GrayStatistic::nonzero_digits) {
    spec.alphas.push_back(ExactScalar(1));
    for (unsigned j = 1; j < q; ++j) spec.alphas.push_back(alpha);
    out.rho = std::log(1.0 + (q - 1) * alpha.approx_d()) / std::log(static_cast<double>(q));
  } else {
    for (unsigned j = 0; j < q; ++j) spec.alphas.push_back(pow_scalar(alpha, j));
    double A = 0;
    for (unsigned j = 0; j < q; ++j) A += std::pow(alpha.approx_d(), static_cast<double>(j));
    out.rho = std::log(A) / std::log(static_cast<double>(q));
  }
  for (std::uint64_t n = 1; n < q; ++n)
    spec.initial[static_cast<std::int64_t>(n)] = out.direct[static_cast<size_t>(n)];

  TollCallback toll;
  if (stat == GrayStatistic::nonzero_digits) {
    // g(q^2 k + q r + j) = (1-alpha) alpha^(gamma(qk+r)+1) for
    // 0 <= r <= q-2, r+1 <= j <= q-1; zero otherwise.
    toll = [q, alpha](std::uint64_t n) {
      unsigned j = static_cast<unsigned>(n % q);
      std::uint64_t upper = n / q;
      unsigned r = static_cast<unsigned>(upper % q);
      if (r + 1 <= j && r <= q - 2) {
        // derived from gamma(qk+j) = gamma(k) + 1_{j != k mod q}; the
        // exponent is gamma(n/q) itself (verified against the direct sums)
        return (ExactScalar(1) - alpha) * pow_scalar(alpha, gray_nonzero_digits(upper, q));
      }
      return ExactScalar(0);
    };
  } else {
    // digit-sum toll, split at j < r and j >= r
    toll = [q, alpha](std::uint64_t n) {
      if (alpha == ExactScalar(1)) return ExactScalar(0);  // limit of the formula
      unsigned j = static_cast<unsigned>(n % q);
      std::uint64_t upper = n / q;
      unsigned r = static_cast<unsigned>(upper % q);
      ExactScalar as = pow_scalar(alpha, gray_digit_sum(upper, q));
      ExactScalar one(1);
      if (j < r) {
        // alpha^sigma (1-alpha^j)(alpha^(q-r) - alpha^(q-j)) / (1-alpha)
        return as * (one - pow_scalar(alpha, j)) *
               (pow_scalar(alpha, q - r) - pow_scalar(alpha, q - j)) / (one - alpha);
      }
      // alpha^sigma (1-alpha^(j-r))(1-alpha^(q-j)) / (1-alpha)
      return as * (one - pow_scalar(alpha, j - r)) * (one - pow_scalar(alpha, q - j)) /
             (one - alpha);
    };
  }
  out.recurrence = qary_eval(spec, static_cast<std::int64_t>(n_max), toll);
  out.match = true;
  for (std::uint64_t n = 0; n <= n_max; ++n)
    if (!(out.direct[static_cast<size_t>(n)] == out.recurrence[static_cast<size_t>(n)])) {
      out.match = false;
      break;
    }
  return out;
}

}  // namespace dcosc

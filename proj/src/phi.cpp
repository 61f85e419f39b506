#include "dcosc/phi.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dcosc {

namespace {

// result = sum_{j: b_j = 1} (alpha/beta)^{ones before j} (beta/(alpha+beta))^j
template <typename T>
T phi_digital(const T& alpha, const T& beta, const DyadicRational& t) {
  T sum = T(0);
  T cur = T(1);
  const T step = beta / (alpha + beta);
  const T up = alpha / beta;
  for (unsigned j = 1; j <= t.level; ++j) {
    cur = cur * step;
    if (t.bit(j)) {
      sum += cur;
      cur = cur * up;
    }
  }
  return sum;
}

}  // namespace

PhiEvaluator::PhiEvaluator(const ExactScalar& alpha, const ExactScalar& beta) {
  if (alpha.is_zero() || beta.is_zero())
    throw DomainError("phi: zero parameter gives a step function, not a continuous phi");
  if (alpha.sign() != beta.sign())
    throw DomainError("phi: mixed-sign parameters cannot be extended to a continuous function");
  positive_ = alpha.sign() > 0;
  a_ = alpha.abs();
  b_ = beta.abs();
}

double PhiEvaluator::lambda() const {
  double a = a_.approx_d(), b = b_.approx_d();
  return std::log2((a + b) / std::max(a, b));
}

ExactScalar PhiEvaluator::dyadic(const DyadicRational& t) const {
  if (t.is_one()) return ExactScalar(1);
  if (rational()) return ExactScalar(phi_digital<mpq_class>(a_.rat(), b_.rat(), t));
  return ExactScalar::floating(phi_digital<long double>(a_.approx(), b_.approx(), t));
}

mpq_class PhiEvaluator::dyadic_q(const DyadicRational& t) const { return dyadic(t).rat(); }

long double PhiEvaluator::value(long double t, long double tol) const {
  if (t < 0.0L || t > 1.0L) throw DomainError("phi: argument outside [0,1]");
  if (tol <= 0.0L) throw std::invalid_argument("phi: tol must be positive");
  double lam = lambda();
  unsigned level = static_cast<unsigned>(
      std::min(200.0L, std::ceil(std::log2(3.0L / tol) / static_cast<long double>(lam))));
  // A long double carries at most ~64 fractional bits; deeper truncation
  // cannot change the represented argument.
  level = std::min(level, 80u);
  DyadicRational d = DyadicRational::nearest(t, level);
  if (d.is_one()) return 1.0L;
  return phi_digital<long double>(a_.approx(), b_.approx(), d);
}

ExactScalar PhiEvaluator::increment(const DyadicRational& t, unsigned level) const {
  if (t.level > level) throw DomainError("phi increment: t deeper than the level");
  mpz_class num = t.numerator << (level - t.level);
  if (num + 1 > mpz_pow_uint(2, level)) throw DomainError("phi increment: t + 2^-N > 1");
  unsigned s = static_cast<unsigned>(mpz_popcount(num.get_mpz_t()));
  ExactScalar sum = a_ + b_;
  return pow_scalar(a_, s) * pow_scalar(b_, level - s) / pow_scalar(sum, level);
}

long double PhiEvaluator::iterative(long double t, unsigned depth) const {
  if (t < 0.0L || t > 1.0L) throw DomainError("phi: argument outside [0,1]");
  long double a = a_.approx(), b = b_.approx(), s = a + b;
  long double scale = 1.0L, offset = 0.0L;
  for (unsigned k = 0; k < depth; ++k) {
    if (t <= 0.5L) {
      scale *= b / s;
      t *= 2.0L;
    } else {
      offset += scale * (b / s);
      scale *= a / s;
      t = 2.0L * t - 1.0L;
    }
  }
  return offset + scale * t;  // phi_0(t) = t
}

PhiEvaluator::Integral PhiEvaluator::integral(unsigned quad_level) const {
  if (!positive_)
    throw UnsupportedError("phi integral: parameters must be positive");
  ExactScalar exact = b_ / (a_ + b_);

  // Trapezoid over the level-L dyadic grid. phi values come from prefix sums
  // of the exact increments alpha^s beta^(L-s) / (alpha+beta)^L, s = nu(j).
  const unsigned L = quad_level;
  const std::uint64_t cells = std::uint64_t{1} << L;
  long double a = a_.approx(), b = b_.approx(), s = a + b;
  std::vector<long double> w(L + 1);
  for (unsigned k = 0; k <= L; ++k)
    w[k] = std::pow(a, static_cast<long double>(k)) *
           std::pow(b, static_cast<long double>(L - k)) /
           std::pow(s, static_cast<long double>(L));
  long double phi = 0.0L, acc = 0.0L;
  for (std::uint64_t j = 0; j < cells; ++j) {
    if (j > 0) acc += phi;  // interior nodes
    phi += w[nu_ones(j)];
  }
  long double trap = (acc + 0.5L) / static_cast<long double>(cells);
  return Integral{exact, trap, exp2l(-static_cast<long double>(L) - 1.0L)};
}

std::vector<PhiEvaluator::HolderLevel> PhiEvaluator::holder_profile(double gamma,
                                                                    unsigned max_level,
                                                                    unsigned grid_level) const {
  if (!positive_) throw UnsupportedError("holder_profile: positive parameters only");
  double a = a_.approx_d(), b = b_.approx_d(), s = a + b;
  double hi = std::max(a, b) / s, lo = std::min(a, b) / s;

  // Exhaustive pair sup over the level-K grid, one pass.
  unsigned K = std::min(grid_level, max_level);
  std::vector<double> grid((std::size_t{1} << K) + 1);
  {
    double phi = 0.0;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << K); ++j) {
      grid[static_cast<size_t>(j)] = phi;
      unsigned p = nu_ones(j);
      phi += std::pow(a, p) * std::pow(b, static_cast<double>(K - p)) /
             std::pow(s, static_cast<double>(K));
    }
    grid.back() = 1.0;
  }
  double pair_sup = 0.0;
  const double h = std::exp2(-static_cast<double>(K));
  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = i + 1; j < grid.size(); ++j) {
      double dt = static_cast<double>(j - i) * h;
      pair_sup = std::max(pair_sup, (grid[j] - grid[i]) / std::pow(dt, gamma));
    }

  std::vector<HolderLevel> out;
  for (unsigned N = 1; N <= max_level; ++N) {
    // Adjacent level-N increments are alpha^s beta^(N-s)/(alpha+beta)^N with
    // s = nu(j); every s in 0..N occurs, so the sup is (max/s)^N * 2^(N gamma).
    double adj = std::pow(hi, static_cast<double>(N)) *
                 std::exp2(gamma * static_cast<double>(N));
    double endpoint = std::pow(hi, static_cast<double>(N)) * std::exp2(static_cast<double>(N));
    (void)lo;
    out.push_back(HolderLevel{N, adj, std::max(pair_sup, adj), endpoint});
  }
  return out;
}

std::vector<double> PhiEvaluator::mc_samples(std::size_t count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double p1 = a_.approx_d() / (a_.approx_d() + b_.approx_d());
  std::vector<double> xs(count);
  for (auto& x : xs) {
    double v = 0.0, w = 0.5;
    for (int i = 0; i < 53; ++i) {
      if (unif(rng) < p1) v += w;
      w *= 0.5;
    }
    x = v;
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace dcosc

#pragma once

// The self-affine interpolation function phi_{alpha,beta} on [0,1]:
//   phi(t) = beta/(alpha+beta) phi(2t)                 t in [0,1/2]
//   phi(t) = alpha/(alpha+beta) phi(2t-1) + beta/(alpha+beta)   t in [1/2,1]
// Canonical evaluation is the digital-sum formula (exact on dyadics, O(bits));
// the recursive construction and the Monte-Carlo distribution function are
// retained as cross-check constructions.

#include <cstdint>
#include <vector>

#include "dcosc/dyadic.hpp"
#include "dcosc/exact.hpp"
#include "dcosc/recurrence.hpp"

namespace dcosc {

class PhiEvaluator {
 public:
  // Both parameters nonzero with the same sign; negative pairs evaluate
  // through |alpha|, |beta|. Mixed signs have no continuous phi.
  PhiEvaluator(const ExactScalar& alpha, const ExactScalar& beta);

  const ExactScalar& alpha() const { return a_; }  // magnitudes
  const ExactScalar& beta() const { return b_; }
  bool rational() const { return a_.is_rational() && b_.is_rational(); }

  // Holder exponent log2((alpha+beta)/max(alpha,beta)); 1 iff alpha == beta.
  double lambda() const;

  // Digital-sum formula, exact.
  ExactScalar dyadic(const DyadicRational& t) const;
  mpq_class dyadic_q(const DyadicRational& t) const;

  // phi(t) for real t in [0,1]: t is truncated to a dyadic whose level the
  // Holder modulus certifies against tol (|phi(t)-phi(t_N)| <= 3*2^(-N
  // lambda)).
  long double value(long double t, long double tol = 1e-15L) const;

  // phi(t + 2^-level) - phi(t), exact: alpha^s beta^(level-s) / (alpha+beta)^level.
  ExactScalar increment(const DyadicRational& t, unsigned level) const;

  // Recursive construction phi_k, depth k, phi_0(t) = t.
  long double iterative(long double t, unsigned depth) const;

  // int_0^1 phi = beta/(alpha+beta), plus a trapezoid cross-check with its
  // certified bound (monotone bracketing).
  struct Integral {
    ExactScalar exact;
    long double quadrature;
    long double quadrature_bound;
  };
  Integral integral(unsigned quad_level = 18) const;

  struct HolderLevel {
    unsigned level;
    double adjacent_sup;   // sup over adjacent level-N pairs of |dphi|/|dt|^gamma
    double pair_sup;       // sup over a coarse exhaustive pair grid
    double endpoint_gamma1_ratio;  // max endpoint increment / 2^-N (gamma = 1)
  };
  std::vector<HolderLevel> holder_profile(double gamma, unsigned max_level,
                                          unsigned grid_level = 7) const;

  // Sorted samples of X = 0.B1B2... with P(Bi = 1) = alpha/(alpha+beta);
  // phi is the distribution function of X.
  std::vector<double> mc_samples(std::size_t count, std::uint64_t seed) const;

  bool positive() const { return positive_; }

 private:
  ExactScalar a_, b_;  // |alpha|, |beta|
  bool positive_ = true;  // sign of the original pair
};

}  // namespace dcosc

#pragma once

// The Dirichlet series of the second difference of a toll,
//   D(s) = sum_{n>=2} g(n) ((n-1)^-s - 2 n^-s + (n+1)^-s)
//        = sum_{n>=1} (g(n+1) - 2g(n) + g(n-1)) n^-s,
// continued analytically for DSL tolls: a finite correction prefix plus
// residue-class polynomial tails that collapse into Hurwitz zetas. Carries
// the g(1) := 0, g(0) := 0 conventions exactly (they shift the prefix).

#include <complex>
#include <cstdint>
#include <vector>

#include "dcosc/recurrence.hpp"
#include "dcosc/toll.hpp"
#include "dcosc/zeta.hpp"

namespace dcosc {

class DirichletD {
 public:
  // Digit-factor tolls have no residue-class polynomial pattern and are not
  // supported here.
  explicit DirichletD(const TollFunction& toll);

  // Analytic continuation; poles sit at s = degree + 1 per surviving tail.
  complexl value(const complexl& s) const;
  bool is_pole(const complexl& s) const;

  // Direct partial sum of the defining series (validation only; needs
  // Re s large enough for comfortable decay).
  complexl direct_sum(const complexl& s, std::uint64_t terms) const;

  // Largest polynomial degree among the tails (abscissa bookkeeping).
  int max_degree() const { return max_degree_; }

 private:
  struct Tail {
    mpq_class coeff;
    unsigned power;     // contributes coeff * M^(power-s) * zeta(s-power, a)
    unsigned modulus;
    std::uint64_t first_n;
  };
  std::vector<std::pair<std::uint64_t, mpq_class>> prefix_;  // d * n^-s corrections
  std::vector<Tail> tails_;
  TollFunction toll_;
  int max_degree_ = -1;
};

}  // namespace dcosc

#include "dcosc/recurrence.hpp"

#include <cmath>

namespace dcosc {

double RecurrenceSpec::rho() const {
  double s = (alpha + beta).approx_d();
  if (negative_pair()) s = -s;
  if (s <= 0.0) throw DomainError("rho undefined: alpha+beta has no positive magnitude");
  return std::log2(s);
}

ExactScalar RecurrenceSpec::f1() const {
  auto it = initial.find(1);
  if (it == initial.end()) throw ConfigError("missing initial value f(1)");
  return it->second;
}

std::vector<ExactScalar> eval_sequence(const RecurrenceSpec& spec, std::int64_t n_max) {
  if (n_max < 1) throw RangeError("eval_sequence: n_max must be >= 1");
  if (n_max > (std::int64_t{1} << 40)) throw RangeError("eval_sequence: n_max too large");
  std::vector<ExactScalar> f(static_cast<size_t>(n_max) + 1, ExactScalar(0));
  for (std::int64_t n = 1; n < spec.n0 && n <= n_max; ++n) {
    auto it = spec.initial.find(n);
    if (it == spec.initial.end())
      throw ConfigError("missing initial value f(" + std::to_string(n) + ")");
    f[static_cast<size_t>(n)] = it->second;
  }
  for (std::int64_t n = spec.n0; n <= n_max; ++n) {
    f[static_cast<size_t>(n)] = spec.alpha * f[static_cast<size_t>(n / 2)] +
                                spec.beta * f[static_cast<size_t>((n + 1) / 2)] +
                                spec.toll.eval(static_cast<std::uint64_t>(n));
  }
  return f;
}

std::vector<mpq_class> eval_sequence_q(const RecurrenceSpec& spec, std::int64_t n_max) {
  if (!spec.all_rational()) throw DomainError("eval_sequence_q: spec is not rational");
  if (n_max < 1) throw RangeError("eval_sequence_q: n_max must be >= 1");
  std::vector<mpq_class> f(static_cast<size_t>(n_max) + 1, mpq_class(0));
  const mpq_class a = spec.alpha.rat();
  const mpq_class b = spec.beta.rat();
  for (std::int64_t n = 1; n < spec.n0 && n <= n_max; ++n) {
    auto it = spec.initial.find(n);
    if (it == spec.initial.end())
      throw ConfigError("missing initial value f(" + std::to_string(n) + ")");
    f[static_cast<size_t>(n)] = it->second.rat();
  }
  for (std::int64_t n = spec.n0; n <= n_max; ++n) {
    f[static_cast<size_t>(n)] = a * f[static_cast<size_t>(n / 2)] +
                                b * f[static_cast<size_t>((n + 1) / 2)] +
                                spec.toll.eval_q(static_cast<std::uint64_t>(n));
  }
  return f;
}

ExactScalar lambda_apply(const ExactScalar& alpha, const ExactScalar& beta,
                         const std::vector<ExactScalar>& f_table, std::int64_t n) {
  std::int64_t hi = (n + 1) / 2;
  if (n < 2 || static_cast<size_t>(n) >= f_table.size() || hi < 1)
    throw RangeError("lambda_apply: index outside table");
  return f_table[static_cast<size_t>(n)] - alpha * f_table[static_cast<size_t>(n / 2)] -
         beta * f_table[static_cast<size_t>(hi)];
}

mpq_class lambda_apply_q(const mpq_class& alpha, const mpq_class& beta,
                         const std::vector<mpq_class>& f_table, std::int64_t n) {
  if (n < 2 || static_cast<size_t>(n) >= f_table.size())
    throw RangeError("lambda_apply_q: index outside table");
  return f_table[static_cast<size_t>(n)] - alpha * f_table[static_cast<size_t>(n / 2)] -
         beta * f_table[static_cast<size_t>((n + 1) / 2)];
}

TollFunction infer_toll(const std::vector<ExactScalar>& f_table, const ExactScalar& alpha,
                        const ExactScalar& beta) {
  TollFunction t;
  for (std::int64_t n = 2; static_cast<size_t>(n) < f_table.size(); ++n)
    t.override[n] = lambda_apply(alpha, beta, f_table, n);
  return t;
}

RecurrenceSpec normalize_start(const RecurrenceSpec& spec) {
  if (spec.n0 <= 2) return spec;
  RecurrenceSpec out = spec;
  auto f = eval_sequence(spec, spec.n0 - 1);
  for (std::int64_t n = 2; n < spec.n0; ++n)
    out.toll.override[n] = lambda_apply(spec.alpha, spec.beta, f, n);
  out.n0 = 2;
  out.initial.clear();
  out.initial[1] = spec.f1();
  return out;
}

}  // namespace dcosc

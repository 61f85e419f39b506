#include "dcosc/qary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dcosc {

ExactScalar QarySpec::coeff_sum() const {
  ExactScalar a(0);
  for (const auto& x : alphas) a += x;
  return a;
}

double QarySpec::rho() const {
  double A = coeff_sum().approx_d();
  if (A <= 0) throw DomainError("qary rho: A > 0 required");
  return std::log(A) / std::log(static_cast<double>(q));
}

bool QarySpec::contraction_ok() const {
  ExactScalar A = coeff_sum();
  for (const auto& x : alphas)
    if (!(x.abs() < A)) return false;
  return true;
}

bool QarySpec::all_rational() const {
  for (const auto& x : alphas)
    if (!x.is_rational()) return false;
  for (const auto& [n, v] : initial)
    if (!v.is_rational()) return false;
  return toll.all_rational();
}

std::vector<ExactScalar> qary_eval(const QarySpec& spec, std::int64_t n_max,
                                   const TollCallback& toll_override) {
  if (spec.q < 2) throw ConfigError("qary: q >= 2");
  if (spec.alphas.size() != spec.q) throw ConfigError("qary: need q coefficients");
  if (n_max < 1) throw RangeError("qary: n_max >= 1");
  std::vector<ExactScalar> f(static_cast<size_t>(n_max) + 1, ExactScalar(0));
  for (std::int64_t n = 1; n < spec.q && n <= n_max; ++n) {
    auto it = spec.initial.find(n);
    if (it == spec.initial.end())
      throw ConfigError("qary: missing initial f(" + std::to_string(n) + ")");
    f[static_cast<size_t>(n)] = it->second;
  }
  for (std::int64_t n = spec.q; n <= n_max; ++n) {
    ExactScalar acc = toll_override ? toll_override(static_cast<std::uint64_t>(n))
                                    : spec.toll.eval(static_cast<std::uint64_t>(n));
    for (unsigned j = 0; j < spec.q; ++j)
      acc += spec.alphas[j] * f[static_cast<size_t>((n + j) / spec.q)];
    f[static_cast<size_t>(n)] = acc;
  }
  return f;
}

std::vector<mpq_class> qary_eval_q(const QarySpec& spec, std::int64_t n_max) {
  if (!spec.all_rational()) throw DomainError("qary_eval_q: rational spec required");
  auto f = qary_eval(spec, n_max);
  std::vector<mpq_class> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[i].rat();
  return out;
}

QaryPhi::QaryPhi(const QarySpec& spec) : q_(spec.q) {
  if (!spec.contraction_ok())
    throw UnsupportedError("qary phi: max |alpha_j| < A violated");
  sum_ = 0;
  for (const auto& x : spec.alphas) {
    alphas_.push_back(x.is_rational() ? x.rat() : mpq_class(x.approx_d()));
    sum_ += alphas_.back();
  }
  double worst = 0;
  for (const auto& a : alphas_) worst = std::max(worst, std::abs(a.get_d()));
  contraction_ = worst / sum_.get_d();
}

mpq_class QaryPhi::at_qadic(const mpz_class& numerator, unsigned level) const {
  mpz_class den = 1;
  for (unsigned i = 0; i < level; ++i) den *= q_;
  if (sgn(numerator) < 0 || numerator > den) throw DomainError("qary phi: outside [0,1]");
  // Descend digits: on [j/q, (j+1)/q], phi(t) = (alpha_{q-1-j}/A) phi(qt-j)
  //                                             + (sum_{q-j<=i<q} alpha_i)/A.
  mpq_class scale(1), offset(0);
  mpq_class t(numerator, den);
  t.canonicalize();
  for (unsigned step = 0; step < level; ++step) {
    if (sgn(t) == 0) break;
    if (t == 1) {
      offset += scale;
      scale = 0;
      break;
    }
    mpq_class qt = t * static_cast<long>(q_);
    mpz_class j = qt.get_num() / qt.get_den();
    unsigned ji = static_cast<unsigned>(j.get_ui());
    if (ji >= q_) ji = q_ - 1;
    mpq_class upper(0);
    for (unsigned i = q_ - ji; i < q_; ++i) upper += alphas_[i];
    offset += scale * upper / sum_;
    scale *= alphas_[q_ - 1 - ji] / sum_;
    t = qt - static_cast<long>(ji);
  }
  // t is now 0 or 1 (q-adic input fully consumed)
  if (t == 1) offset += scale;
  return offset;
}

long double QaryPhi::value(long double t, long double tol) const {
  if (t < 0.0L || t > 1.0L) throw DomainError("qary phi: outside [0,1]");
  if (tol <= 0.0L) throw std::invalid_argument("qary phi: tol > 0");
  unsigned depth = static_cast<unsigned>(
      std::min(200.0L, std::ceil(std::log(2.0L / tol) / -std::log((long double)contraction_))));
  long double S = static_cast<long double>(sum_.get_d());
  long double scale = 1.0L, offset = 0.0L;
  for (unsigned step = 0; step < depth; ++step) {
    long double qt = t * q_;
    unsigned j = std::min<unsigned>(q_ - 1, static_cast<unsigned>(std::floor(qt)));
    long double upper = 0.0L;
    for (unsigned i = q_ - j; i < q_; ++i) upper += static_cast<long double>(alphas_[i].get_d());
    offset += scale * upper / S;
    scale *= static_cast<long double>(alphas_[q_ - 1 - j].get_d()) / S;
    t = qt - j;
  }
  return offset + scale * t;  // phi_0(t) = t
}

namespace {

mpq_class toll_ext_qary(const QarySpec& spec, const QaryPhi& phi, const mpq_class& x,
                        unsigned level) {
  if (x < 1) return mpq_class(0);
  mpz_class fl = x.get_num() / x.get_den();
  mpq_class t = x - mpq_class(fl);
  std::uint64_t i = fl.get_ui();
  mpq_class gi = spec.toll.eval_q(i);
  if (sgn(t) == 0) return gi;
  mpz_class den = 1;
  for (unsigned k = 0; k < level; ++k) den *= spec.q;
  mpq_class ph = phi.at_qadic(mpz_class(t * den), level);
  return (1 - ph) * gi + ph * spec.toll.eval_q(i + 1);
}

}  // namespace

mpq_class qary_lemma3(const QarySpec& spec, std::uint64_t n) {
  if (!spec.all_rational()) throw DomainError("qary_lemma3: rational spec required");
  QaryPhi phi(spec);
  mpq_class A = spec.coeff_sum().rat();
  // L = floor(log_q n)
  unsigned L = 0;
  {
    std::uint64_t p = 1;
    while (p * spec.q <= n) {
      p *= spec.q;
      ++L;
    }
  }
  // f(n) = sum_{k<L} A^k g(n/q^k) + A^L f(n/q^L), the boundary interpolated
  // from the initial values directly (so the k = L toll term is inside it).
  mpq_class acc(0), apow(1), qpow(1);
  for (unsigned k = 0; k < L; ++k) {
    mpq_class x = mpq_class(static_cast<unsigned long>(n)) / qpow;
    acc += apow * toll_ext_qary(spec, phi, x, k);
    apow *= A;
    qpow *= spec.q;
  }
  mpq_class aL = apow;
  mpq_class x = mpq_class(static_cast<unsigned long>(n)) / qpow;  // in [1, q)
  mpz_class fl = x.get_num() / x.get_den();
  std::uint64_t i = fl.get_ui();
  auto f_at = [&](std::uint64_t m) {
    if (m < spec.q) return spec.initial.at(static_cast<std::int64_t>(m)).rat();
    return mpq_class(A * spec.initial.at(1).rat() + spec.toll.eval_q(spec.q));
  };
  mpq_class t = x - mpq_class(fl);
  mpq_class boundary;
  if (sgn(t) == 0) {
    boundary = f_at(i);
  } else {
    mpz_class den = 1;
    for (unsigned k = 0; k < L + 1; ++k) den *= spec.q;
    mpq_class ph = phi.at_qadic(mpz_class(t * den), L + 1);
    boundary = (1 - ph) * f_at(i) + ph * f_at(i + 1);
  }
  return acc + aL * boundary;
}

mpq_class qary_q_exact(const QarySpec& spec, std::uint64_t n) {
  // Finite when g vanishes at multiples of q beyond the override region.
  mpq_class A = spec.coeff_sum().rat();
  mpq_class q(0), apow(1);
  std::uint64_t arg = n;
  for (unsigned m = 1; m <= 64; ++m) {
    arg *= spec.q;
    apow *= A;
    mpq_class val = spec.toll.eval_q(arg);
    q += val / apow;
    if (arg > static_cast<std::uint64_t>(std::max<std::int64_t>(spec.toll.override_max_n(), 1))) {
      // past the overrides: the toll must be structurally zero at multiples
      // of q (n' = 0 mod q meets n' = r mod M iff gcd(q, M) divides r)
      bool vanish = true;
      for (const auto& t : spec.toll.terms) {
        unsigned g = std::gcd(spec.q, t.modulus);
        for (unsigned r : t.residues)
          if (r % g == 0) vanish = false;
      }
      if (!vanish) throw UnsupportedError("qary_q_exact: toll active at multiples of q");
      break;
    }
  }
  return q;
}

std::vector<std::uint64_t> binom_not_div(unsigned q, std::uint64_t n_max) {
  std::vector<std::uint64_t> prefix(static_cast<size_t>(n_max) + 1, 0);
  std::vector<unsigned> row{1};
  std::uint64_t running = 0;
  for (std::uint64_t m = 0; m < n_max; ++m) {
    if (m > 0) {
      std::vector<unsigned> next(row.size() + 1, 0);
      next[0] = 1;
      next[row.size()] = 1;
      for (size_t k = 1; k < row.size(); ++k) next[k] = (row[k - 1] + row[k]) % q;
      row = std::move(next);
    }
    for (unsigned v : row)
      if (v % q != 0) ++running;
    prefix[static_cast<size_t>(m) + 1] = running;
  }
  return prefix;
}

QarySpec binomial_spec(unsigned q) {
  QarySpec s;
  s.q = q;
  for (unsigned j = 0; j < q; ++j) s.alphas.push_back(ExactScalar(static_cast<long>(q - j)));
  for (unsigned n = 1; n < q; ++n) {
    // The (qa1) recurrence holds for all n >= 0, so the initial values are
    // what the recurrence itself produces from f(0) = 0, f(1) = 1: for
    // n < q only the j >= q - n terms have floor((n+j)/q) = 1.
    long coeff = 0;
    for (unsigned j = 0; j < q; ++j)
      if ((n + j) / q == 1) coeff += static_cast<long>(q - j);
    s.initial[n] = ExactScalar(coeff);  // n(n+1)/2: what (qa1) gives from f(1) = 1
  }
  return s;
}

}  // namespace dcosc

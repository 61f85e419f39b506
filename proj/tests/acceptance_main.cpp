// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances are pinned in code next to each check.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dcosc/cli.hpp"
#include "dcosc/corpus.hpp"
#include "dcosc/equivalence.hpp"
#include "dcosc/fourier.hpp"
#include "dcosc/gray.hpp"
#include "dcosc/minmax.hpp"
#include "dcosc/toll_lang.hpp"

using namespace dcosc;

namespace {

constexpr long double kLn2 = 0.69314718055994530942L;
constexpr long double kPi = 3.14159265358979323846L;
constexpr long double kEuler = 0.5772156649015328606L;

int g_failures = 0;

struct Criterion {
  int id;
  const char* label;
  std::function<bool(std::string&)> body;
  double budget_s = 0.0;  // 0: no runtime requirement
};

void run(const Criterion& c) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.budget_s > 0 && secs > c.budget_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over runtime budget");
  }
  std::printf("[%s] criterion %d: %s (%s%.1fs)\n", ok ? "PASS" : "FAIL", c.id, c.label,
              detail.empty() ? "" : (detail + ", ").c_str(), secs);
  if (!ok) ++g_failures;
}

RecurrenceSpec spec_of(const char* a, const char* b, const char* toll, const char* f1) {
  RecurrenceSpec s;
  s.alpha = ExactScalar::parse(a);
  s.beta = ExactScalar::parse(b);
  s.toll = parse_toll(toll);
  s.initial[1] = ExactScalar::parse(f1);
  return s;
}

// 1. Exact identity suite over the odd-only / g = 0 fixtures, n <= 2^14.
// Independent fixtures check in parallel (everything here is immutable
// after construction).
bool criterion1(std::string& detail) {
  const std::uint64_t N = std::uint64_t{1} << 14;
  const auto& all_fixtures = corpus();
  std::atomic<int> eligible{0}, passed{0};
  std::atomic<size_t> next{0};
  unsigned workers = std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= all_fixtures.size()) return;
        const Fixture& fix = all_fixtures[i];
        if (fix.kind != Fixture::Kind::binary) continue;
        ClosedForm cf(fix.spec);
        if (!cf.dec().exact || cf.resonant()) continue;
        if (!cf.dec().residual.toll.vanishes_at_even()) continue;
        eligible.fetch_add(1);
        auto table = eval_sequence_q(cf.dec().start_normalized, static_cast<std::int64_t>(N));
        auto sweep = cf.lemma3_sweep(N);
        bool all = true;
        for (std::uint64_t n = 1; n <= N && all; ++n) {
          mpq_class lhs = table[n] -
                          cf.dec().poly_part.eval(mpq_class(static_cast<unsigned long>(n))) -
                          sweep[n];
          if (sgn(lhs) != 0) all = false;
        }
        if (all) passed.fetch_add(1);
      }
    });
  for (auto& th : pool) th.join();
  std::ostringstream os;
  os << passed.load() << "/" << eligible.load() << " fixtures exact to 2^14";
  detail = os.str();
  return eligible.load() >= 25 && passed.load() == eligible.load();
}

// 2. The monotonicity counterexample.
bool criterion2(std::string& detail) {
  auto f = eval_sequence_q(spec_of("1", "1", "1 + odd", "0"), 16);
  detail = "f(7) = " + f[7].get_str() + ", f(8) = " + f[8].get_str();
  return f[7] == 8 && f[8] == 7 && f[7] > f[8];
}

// 3. phi metric suite.
bool criterion3(std::string& detail) {
  const std::pair<int, int> pairs[] = {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {3, 2}, {10, 1}};
  for (auto [a, b] : pairs) {
    PhiEvaluator phi{ExactScalar(a), ExactScalar(b)};
    // Exact functional equation on the full level-16 grid via prefix sums of
    // the exact increments.
    const unsigned L = 16;
    const std::uint64_t cells = std::uint64_t{1} << L;
    mpq_class S(a + b);
    std::vector<mpq_class> val(cells + 1);
    std::vector<mpq_class> wpow(L + 1);
    for (unsigned s = 0; s <= L; ++s)
      wpow[s] =
          mpq_pow_int(mpq_class(a), s) * mpq_pow_int(mpq_class(b), L - s) / mpq_pow_int(S, L);
    val[0] = 0;
    for (std::uint64_t j = 0; j < cells; ++j) val[j + 1] = val[j] + wpow[nu_ones(j)];
    if (val[cells] != 1) {
      detail = "phi(1) != 1";
      return false;
    }
    for (std::uint64_t j = 0; j <= cells / 2; ++j)
      if (val[j] * S != mpq_class(b) * val[2 * j]) {
        detail = "upper branch fails";
        return false;
      }
    for (std::uint64_t j = cells / 2; j <= cells; ++j)
      if (S * val[j] != mpq_class(a) * val[2 * j - cells] + mpq_class(b)) {
        detail = "lower branch fails";
        return false;
      }
    for (std::uint64_t j : {std::uint64_t{1}, cells / 3, cells / 2 + 7})
      if (phi.dyadic_q(DyadicRational(mpz_class(static_cast<unsigned long>(j)), L)) != val[j]) {
        detail = "digital-sum evaluator disagrees with the grid";
        return false;
      }
    // integral: the exact value, and the quadrature within its certificate
    auto integral = phi.integral(16);
    mpq_class target = mpq_class(b) / S;
    if (integral.exact.rat() != target) {
      detail = "closed-form integral wrong";
      return false;
    }
    if (std::abs(integral.quadrature - static_cast<long double>(target.get_d())) >
        integral.quadrature_bound) {
      detail = "quadrature outside its certificate";
      return false;
    }
    // Holder profile: seminorm <= 3 at gamma = lambda for levels <= 20; the
    // gamma = 1 endpoint ratio is 2^(N(1-lambda)) within 1%.
    double lam = phi.lambda();
    for (const auto& lv : phi.holder_profile(lam, 20))
      if (lv.adjacent_sup > 3.0 || lv.pair_sup > 3.0) {
        detail = "Holder seminorm exceeds 3";
        return false;
      }
    for (const auto& lv : phi.holder_profile(1.0, 20)) {
      double want = std::exp2(static_cast<double>(lv.level) * (1.0 - lam));
      if (std::abs(lv.endpoint_gamma1_ratio / want - 1.0) > 0.01) {
        detail = "endpoint gamma=1 growth off by more than 1%";
        return false;
      }
    }
  }
  detail = "6 parameter pairs, level-16 grid exact";
  return true;
}

// 4. Fourier cross-validation on the (2,2) fixtures.
bool criterion4(std::string& detail) {
  struct Case {
    const char* name;
    RecurrenceSpec spec;
  };
  std::vector<Case> cases = {
      {"A073121", spec_of("2", "2", "0", "1")},
      {"A006581", spec_of("2", "2", "(n-1)/2*odd", "0")},
      {"A048641", spec_of("2", "2", "n/2 - ind(4,1)/2 + ind(4,3)/2", "0")},
      {"A022560", spec_of("2", "2", "floor(n^2/4)", "0")},
  };
  long double worst = 0.0L;
  for (auto& c : cases) {
    ClosedForm cf(c.spec);
    FourierEngine eng(cf);
    for (int k = -20; k <= 20; ++k) {
      auto za = eng.coeff_equal(k);
      auto zb = eng.coeff_integral(k, 1e-10L);
      long double diff = std::abs(za.value - zb.value);
      worst = std::max(worst, diff);
      if (diff > 1e-8L) {
        detail = std::string(c.name) + " route disagreement at k = " + std::to_string(k);
        return false;
      }
    }
  }
  // K = 50 synthesis vs the closed-form P for A073121 on the 256-point grid.
  {
    ClosedForm cf(cases[0].spec);
    FourierEngine eng(cf);
    auto ser = eng.series(-50, 50, true);
    long double sup = 0.0L;
    for (int j = 0; j < 256; ++j) {
      long double t = (static_cast<long double>(j) + 0.5L) / 256.0L;
      long double direct = std::pow(2.0L, -t) * (3.0L - std::pow(2.0L, 1.0L - t));
      sup = std::max(sup, std::abs(ser.synthesize(t) - direct));
    }
    if (sup > 1e-3L) {
      detail = "K=50 synthesis sup-norm " + std::to_string(static_cast<double>(sup));
      return false;
    }
  }
  // Sensitivity quadruple means: printed values to 1e-4, exact formulas 1e-8.
  {
    long double printed[4] = {0.02865L, 0.01548L, 0.25L, 0.06655L};
    long double exact[4] = {-1.0L / (2.0L * kLn2) + 0.75L,
                            3.0L / (4.0L * kLn2) - kPi / (8.0L * kLn2) - 0.5L, 0.25L,
                            kPi / (8.0L * kLn2) - 0.5L};
    for (unsigned j = 0; j < 4; ++j) {
      TollFunction g;
      g.terms.push_back(TollTerm{ExactScalar(1), 0, 4, {j}, DigitFactor::none, ExactScalar(1)});
      RecurrenceSpec s;
      s.alpha = ExactScalar(2);
      s.beta = ExactScalar(2);
      s.toll = g;
      s.initial[1] = ExactScalar(0);
      ClosedForm cf(s);
      FourierEngine eng(cf);
      long double mean = eng.coeff_equal(0).value.real();
      if (std::abs(mean - printed[j]) > 1e-4L) {
        detail = "quadruple mean " + std::to_string(j) + " off the printed value";
        return false;
      }
      if (std::abs(mean - exact[j]) > 1e-8L) {
        detail = "quadruple mean " + std::to_string(j) + " off the exact formula";
        return false;
      }
    }
  }
  detail = "164 coefficient pairs agree (worst " + std::to_string(static_cast<double>(worst)) +
           ")";
  return true;
}

// 5. Antiperiodic suite.
bool criterion5(std::string& detail) {
  const char* ids[] = {"A005536", "A079947", "A079954", "A094120"};
  for (const char* id : ids) {
    const Fixture& fix = fixture(id);
    ClosedForm cf(fix.spec);
    if (cf.dec().kind != PeriodicKind::antiperiodic) {
      detail = std::string(id) + " not antiperiodic";
      return false;
    }
    auto rep = cf.verify_identity(std::uint64_t{1} << 12);
    if (!rep.exact || !rep.all_zero) {
      detail = std::string(id) + " identity not exact";
      return false;
    }
    for (int j = 0; j < 128; ++j) {
      long double t = static_cast<long double>(j) / 128.0L;
      if (std::abs(cf.p_periodic(t + 1.0L) + cf.p_periodic(t)) > 1e-10L) {
        detail = std::string(id) + " antiperiodic sign law fails";
        return false;
      }
    }
  }
  detail = "4 fixtures exact to 2^12, sign law at 128 points";
  return true;
}

// 6. q-ary binomial counts, the Stein bound, Gray generating polynomials.
bool criterion6(std::string& detail) {
  for (unsigned q : {2u, 3u, 5u}) {
    auto counts = binom_not_div(q, 2000);
    auto spec = binomial_spec(q);
    auto f = qary_eval_q(spec, 2000);
    double A = spec.coeff_sum().approx_d();
    double rho = spec.rho();
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      if (f[n] != static_cast<unsigned long>(counts[n])) {
        detail = "q=" + std::to_string(q) + " count mismatch at n=" + std::to_string(n);
        return false;
      }
      double ratio = f[n].get_d() / std::pow(static_cast<double>(n), rho);
      if (ratio > 1.0 + 1e-12 || ratio < 1.0 / A - 1e-12) {
        detail = "Stein bound violated at n=" + std::to_string(n);
        return false;
      }
    }
  }
  for (unsigned q : {3u, 4u})
    for (GrayStatistic st : {GrayStatistic::nonzero_digits, GrayStatistic::digit_sum})
      for (const char* a : {"1/2", "2"})
        if (!gray_gen_poly(q, ExactScalar::parse(a), 1000, st).match) {
          detail = std::string("gray mismatch (q=") + std::to_string(q) + ", alpha=" + a + ")";
          return false;
        }
  detail = "Pascal counts to 2000 for q in {2,3,5}; gray to 1000 for q in {3,4}";
  return true;
}

// 7. Min/max propositions at 12 in-region points plus the outside report.
bool criterion7(std::string& detail) {
  struct Point {
    const char* a;
    const char* b;
    SplitMode mode;
  };
  const Point points[] = {
      {"1", "2", SplitMode::minimize},     {"2", "3", SplitMode::minimize},
      {"1", "1", SplitMode::minimize},     {"1/2", "1", SplitMode::minimize},
      {"2", "2", SplitMode::minimize},     {"3", "5", SplitMode::minimize},
      {"1/2", "1/4", SplitMode::minimize}, {"2/3", "1/3", SplitMode::minimize},
      {"1/2", "1/2", SplitMode::minimize}, {"2", "1", SplitMode::maximize},
      {"3", "1", SplitMode::maximize},     {"3/2", "1/2", SplitMode::maximize},
  };
  for (const auto& p : points) {
    auto r = minmax_solve(ExactScalar::parse(p.a), ExactScalar::parse(p.b), 1024, p.mode);
    if (!r.region_holds) {
      detail = std::string("(") + p.a + "," + p.b + ") not in the stated region";
      return false;
    }
    if (!r.equals_fundamental) {
      detail = std::string("DP != S at (") + p.a + "," + p.b +
               "), n=" + std::to_string(r.first_mismatch);
      return false;
    }
  }
  auto out = minmax_solve(ExactScalar(3), ExactScalar(2), 1024, SplitMode::maximize);
  if (out.region_holds) {
    detail = "(3,2) unexpectedly inside the max region";
    return false;
  }
  detail = "12 in-region points equal S to 1024; (3,2) reported without claims";
  return true;
}

// 8. Nowhere-differentiability probe for the A006581 profile.
bool criterion8(std::string& detail) {
  ClosedForm cf(spec_of("2", "2", "(n-1)/2*odd", "0"));
  double slope = static_cast<double>(kLn2) / 9.0;
  std::vector<double> q;
  for (unsigned n = 4; n <= 20; ++n) {
    mpz_class D = 3 * mpz_pow_uint(2, n - 1);
    mpq_class x1(D, mpz_pow_uint(2, n)), x2(D + 1, mpz_pow_uint(2, n));
    x1.canonicalize();
    x2.canonicalize();
    mpq_class p1 = cf.p_times_pow_q_at(x1) / (x1 * x1);
    mpq_class p2 = cf.p_times_pow_q_at(x2) / (x2 * x2);
    long double dt = std::log2(static_cast<long double>(x2.get_d())) -
                     std::log2(static_cast<long double>(x1.get_d()));
    q.push_back(static_cast<double>(
        (static_cast<long double>(p2.get_d()) - static_cast<long double>(p1.get_d())) / dt));
  }
  double C = -1e300;
  for (unsigned i = 0; i < 5; ++i) C = std::max(C, slope * (i + 4) - q[i]);
  for (unsigned i = 5; i < q.size(); ++i)
    if (q[i] < slope * (i + 4) - C - 1e-9) {
      detail = "quotient below the linear bound at level " + std::to_string(i + 4);
      return false;
    }
  if (q.back() <= q.front()) {
    detail = "difference quotients not growing";
    return false;
  }
  std::ostringstream os;
  os << "quotients grow from " << q.front() << " to " << q.back() << ", >= (log2/9) n - " << C;
  detail = os.str();
  return true;
}

// 9. Resonant toll: TB1 identity and the Euler-constant mean value.
bool criterion9(std::string& detail) {
  ClosedForm cf(spec_of("2", "2", "n^2", "0"));
  if (!cf.resonant() || cf.dec().log_coefficient != 1) {
    detail = "log coefficient not 1";
    return false;
  }
  for (std::uint64_t n = 1; n <= 64; ++n)
    if (cf.q_exact(n) != 0) {
      detail = "Q(n) != 0";
      return false;
    }
  auto rep = cf.verify_identity(std::uint64_t{1} << 12);
  if (!rep.exact || !rep.all_zero) {
    detail = "TB1 identity not exact to 2^12";
    return false;
  }
  FourierEngine eng(cf);
  long double mean = eng.coeff_equal(0).value.real();
  long double want = (4.0L * kEuler - 3.0L) / (4.0L * kLn2) + 0.5L;
  if (std::abs(mean - want) > 1e-8L) {
    detail = "mean value off: " + std::to_string(static_cast<double>(mean));
    return false;
  }
  std::ostringstream os;
  os << "identity exact, Q = 0, mean " << static_cast<double>(mean);
  detail = os.str();
  return true;
}

// 10. Full-corpus offline validation at depth 12.
bool criterion10(std::string& detail) {
  std::ostringstream out, err;
  int code = run_cli({"validate", "--all", "--offline", "--depth", "12"}, out, err);
  size_t fixtures = corpus().size();
  std::ostringstream os;
  os << fixtures << " fixtures, exit " << code;
  detail = os.str();
  if (code != 0) {
    std::fputs(err.str().c_str(), stderr);
    return false;
  }
  return fixtures >= 60;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact identity suite (odd-only / g = 0 fixtures, n <= 2^14)", criterion1, 30.0},
      {2, "monotonicity counterexample f(7) = 8 > f(8) = 7", criterion2},
      {3, "phi metrics: functional equation, integral, Holder growth", criterion3},
      {4, "Fourier cross-validation on the (2,2) fixtures", criterion4, 60.0},
      {5, "antiperiodic suite exact to 2^12 with the sign law", criterion5},
      {6, "q-ary binomial counts, Stein bound, Gray generating polynomials", criterion6},
      {7, "min/max propositions at 12 parameter points", criterion7},
      {8, "nowhere-differentiability probe (A006581 profile)", criterion8},
      {9, "resonant toll: log term, Q = 0, Euler-constant mean", criterion9},
      {10, "corpus validation, offline, depth 12", criterion10, 120.0},
  };
  for (const auto& c : criteria) run(c);
  if (g_failures == 0) {
    std::puts("acceptance: all criteria passed");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", g_failures);
  return 1;
}

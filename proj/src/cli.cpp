#include "dcosc/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dcosc/corpus.hpp"
#include "dcosc/equivalence.hpp"
#include "dcosc/fourier.hpp"
#include "dcosc/gray.hpp"
#include "dcosc/minmax.hpp"
#include "dcosc/mixed_sign.hpp"
#include "dcosc/spec_json.hpp"
#include "dcosc/toll_lang.hpp"

namespace dcosc {

namespace {

using nlohmann::json;

double fixed_digits(long double x) {
  // round through 12 significant digits so reports are byte-stable
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(long double x) {  // CSV cells (ostream default is 6 digits)
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

const char* kind_name(PeriodicKind k) {
  switch (k) {
    case PeriodicKind::periodic: return "periodic";
    case PeriodicKind::antiperiodic: return "antiperiodic";
    case PeriodicKind::discontinuous: return "discontinuous";
  }
  return "periodic";
}

const char* verdict_name(ConvergenceVerdict v) {
  switch (v) {
    case ConvergenceVerdict::verified: return "verified";
    case ConvergenceVerdict::violated: return "violated";
    case ConvergenceVerdict::unknown: return "unknown";
  }
  return "unknown";
}

struct SpecFlags {
  std::string alpha = "1", beta = "1", toll = "0", f1 = "0";
  std::vector<std::string> initial;  // "n=v"
  std::int64_t n0 = 2;
  std::string spec_file;

  void attach(CLI::App* cmd, bool with_file = true) {
    cmd->add_option("--alpha", alpha, "alpha coefficient (rational)");
    cmd->add_option("--beta", beta, "beta coefficient (rational)");
    cmd->add_option("--toll", toll, "toll expression g(n)");
    cmd->add_option("--f1", f1, "initial value f(1)");
    cmd->add_option("--initial", initial, "extra initial values n=v (repeatable)");
    cmd->add_option("--n0", n0, "first n where the recurrence holds");
    if (with_file) cmd->add_option("--spec", spec_file, "JSON spec file (overrides flags)");
  }

  RecurrenceSpec build() const {
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw ConfigError("cannot open spec file '" + spec_file + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      return spec_from_json(buf.str());
    }
    RecurrenceSpec s;
    s.alpha = ExactScalar::parse(alpha);
    s.beta = ExactScalar::parse(beta);
    s.toll = parse_toll(toll);
    s.initial[1] = ExactScalar::parse(f1);
    s.n0 = n0;
    for (const auto& kv : initial) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--initial wants n=value");
      s.initial[std::stoll(kv.substr(0, eq))] = ExactScalar::parse(kv.substr(eq + 1));
    }
    return s;
  }
};

json scalar_json(const ExactScalar& v) {
  if (v.is_rational()) return v.str();
  return fixed_digits(v.approx());
}

int cmd_analyze(const SpecFlags& flags, std::int64_t nmax, unsigned samples, std::ostream& out) {
  RecurrenceSpec spec = flags.build();
  ClosedForm cf(spec);
  const auto& dec = cf.dec();
  json rep;
  rep["spec"] = json::parse(spec_to_json(spec));
  rep["rho"] = fixed_digits(dec.rho);
  rep["lambda"] = fixed_digits(dec.lambda);
  rep["kind"] = kind_name(dec.kind);
  rep["poly_part"] = dec.poly_part.str();
  rep["log_coefficient"] = dec.log_coefficient.get_str();
  rep["exact"] = dec.exact;
  json conv;
  conv["verdict"] = verdict_name(dec.convergence.verdict);
  conv["ratio"] = fixed_digits(dec.convergence.ratio);
  conv["holder_certified"] = dec.convergence.holder_certified;
  conv["witness"] = dec.convergence.witness;
  json majorants = json::array();
  for (const auto& row : dec.convergence.table)
    majorants.push_back({{"m", row.m}, {"A_m", fixed_digits(row.a_m)},
                         {"scaled", fixed_digits(row.scaled)}});
  conv["majorants"] = majorants;
  rep["convergence"] = conv;

  auto idrep = cf.verify_identity(static_cast<std::uint64_t>(nmax));
  rep["residual_max"] = fixed_digits(idrep.max_abs);
  rep["identity"] = {{"n_max", nmax},
                     {"exact", idrep.exact},
                     {"all_zero", idrep.all_zero},
                     {"residual_max", fixed_digits(idrep.max_abs)},
                     {"argmax", idrep.argmax}};
  bool sampled = dec.convergence.verdict == ConvergenceVerdict::verified &&
                 dec.kind != PeriodicKind::discontinuous;
  json psamples = json::array(), qsamples = json::array();
  if (sampled) {
    for (unsigned j = 0; j < samples; ++j) {
      long double t = static_cast<long double>(j) / samples;
      psamples.push_back({{"t", fixed_digits(t)}, {"P", fixed_digits(cf.p_periodic(t))}});
    }
    for (std::uint64_t n : {3u, 5u, 7u, 11u, 100u}) {
      if (static_cast<std::int64_t>(n) > nmax) break;
      auto q = cf.q_tail(static_cast<long double>(n));
      qsamples.push_back({{"n", n},
                          {"Q", fixed_digits(q.value)},
                          {"bound", fixed_digits(q.bound)},
                          {"provenance", "float"}});
    }
  }
  rep["P_samples"] = psamples;
  rep["Q_samples"] = qsamples;
  out << rep.dump(2) << "\n";
  return idrep.all_zero || !idrep.exact ? 0 : 1;
}

int cmd_phi(const std::string& alpha, const std::string& beta, unsigned level,
            const std::string& construction, std::uint64_t mc_samples, std::uint64_t seed,
            std::ostream& out) {
  PhiEvaluator phi(ExactScalar::parse(alpha), ExactScalar::parse(beta));
  out << "t,phi\n";
  std::uint64_t cells = std::uint64_t{1} << level;
  if (construction == "mc") {
    auto xs = phi.mc_samples(mc_samples, seed);
    for (std::uint64_t j = 0; j <= cells; ++j) {
      double t = static_cast<double>(j) / static_cast<double>(cells);
      auto it = std::upper_bound(xs.begin(), xs.end(), t);
      double cdf = static_cast<double>(it - xs.begin()) / static_cast<double>(xs.size());
      out << fmt12(t) << "," << fmt12(cdf) << "\n";
    }
    return 0;
  }
  for (std::uint64_t j = 0; j <= cells; ++j) {
    long double t = static_cast<long double>(j) / static_cast<long double>(cells);
    long double v = construction == "iterate"
                        ? phi.iterative(t, level + 8)
                        : static_cast<long double>(
                              phi.dyadic(DyadicRational(mpz_class(static_cast<unsigned long>(j)),
                                                        level))
                                  .approx());
    out << fmt12(t) << "," << fmt12(v) << "\n";
  }
  return 0;
}

int cmd_fourier(const SpecFlags& flags, const std::string& krange, const std::string& method,
                long double tol, int synth_k, unsigned synth_points, std::ostream& out) {
  RecurrenceSpec spec = flags.build();
  ClosedForm cf(spec);
  FourierEngine eng(cf);
  int k_lo = 0, k_hi = 0;
  {
    auto dots = krange.find("..");
    if (dots == std::string::npos) {
      k_lo = k_hi = std::stoi(krange);
    } else {
      k_lo = std::stoi(krange.substr(0, dots));
      k_hi = std::stoi(krange.substr(dots + 2));
    }
  }
  json arr = json::array();
  FourierSeries series;
  series.kind = cf.dec().kind;
  for (int k = k_lo; k <= k_hi; ++k) {
    FourierCoeff c;
    if (method == "integral")
      c = eng.coeff_integral(k, tol);
    else if (method == "zeta")
      c = eng.coeff_equal(k);
    else
      c = eng.coeff(k, tol);
    series.coeffs[k] = c;
    arr.push_back({{"k", k},
                   {"re", fixed_digits(c.value.real())},
                   {"im", fixed_digits(c.value.imag())},
                   {"method", c.method == CoeffMethod::zeta_closed ? "zeta" : "integral"},
                   {"bound", fixed_digits(c.bound)}});
  }
  json rep;
  rep["kind"] = kind_name(cf.dec().kind);
  rep["coefficients"] = arr;
  if (synth_k > 0) {
    json synth = json::array();
    for (unsigned j = 0; j < synth_points; ++j) {
      long double t = static_cast<long double>(j) / synth_points;
      synth.push_back({{"t", fixed_digits(t)}, {"P", fixed_digits(series.synthesize(t))}});
    }
    rep["synthesis"] = synth;
  }
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, unsigned samples,
              std::ostream& out) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
  };
  auto w = periodically_equivalent(load(file_a), load(file_b), samples);
  json rep;
  rep["verdict"] = w.verdict == EquivVerdict::equivalent
                       ? "equivalent"
                       : w.verdict == EquivVerdict::not_equivalent ? "not-equivalent"
                                                                   : "inconclusive";
  rep["scale"] = scalar_json(w.scale);
  rep["poly_a"] = w.poly_a.str();
  rep["poly_b"] = w.poly_b.str();
  rep["exact"] = w.exact;
  rep["residual"] = fixed_digits(w.residual);
  if (w.coeff_residual >= 0) rep["coeff_residual"] = fixed_digits(w.coeff_residual);
  rep["detail"] = w.detail;
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_qary(unsigned q, const std::string& alphas_csv, const std::string& toll,
             const std::vector<std::string>& initial, std::int64_t nmax, std::ostream& out) {
  QarySpec s;
  s.q = q;
  std::stringstream ss(alphas_csv);
  std::string item;
  while (std::getline(ss, item, ',')) s.alphas.push_back(ExactScalar::parse(item));
  s.toll = parse_toll(toll);
  for (const auto& kv : initial) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--initial wants n=value");
    s.initial[std::stoll(kv.substr(0, eq))] = ExactScalar::parse(kv.substr(eq + 1));
  }
  for (std::int64_t n = 1; n < q; ++n)
    if (!s.initial.count(n)) s.initial[n] = ExactScalar(static_cast<long long>(n));
  auto f = qary_eval(s, nmax);
  bool exact_ok = true;
  if (s.all_rational()) {
    for (std::uint64_t n : {2u, 5u, 16u}) {
      if (static_cast<std::int64_t>(n) > nmax) break;
      if (qary_lemma3(s, n) != f[n].rat()) exact_ok = false;
    }
  }
  json rep;
  rep["q"] = q;
  rep["rho"] = fixed_digits(s.rho());
  rep["contraction_ok"] = s.contraction_ok();
  rep["identity_spotcheck"] = exact_ok;
  json values = json::array();
  for (std::int64_t n = 1; n <= std::min<std::int64_t>(nmax, 32); ++n)
    values.push_back(scalar_json(f[static_cast<size_t>(n)]));
  rep["values_prefix"] = values;
  out << rep.dump(2) << "\n";
  return exact_ok ? 0 : 1;
}

int cmd_minmax(const std::string& alpha, const std::string& beta, const std::string& mode,
               std::int64_t nmax, std::ostream& out) {
  auto r = minmax_solve(ExactScalar::parse(alpha), ExactScalar::parse(beta), nmax,
                        mode == "max" ? SplitMode::maximize : SplitMode::minimize);
  json rep;
  rep["mode"] = mode;
  rep["region_holds"] = r.region_holds;
  if (r.region_holds) {
    rep["equals_fundamental"] = r.equals_fundamental;
    if (!r.equals_fundamental) rep["first_mismatch"] = r.first_mismatch;
  } else {
    rep["note"] = "outside the proposition region: no equality claim";
    rep["matches_fundamental_observed"] = r.equals_fundamental;
  }
  json arg = json::array();
  for (std::int64_t n = 2; n <= std::min<std::int64_t>(nmax, 32); ++n)
    arg.push_back(r.arg_opt[static_cast<size_t>(n)]);
  rep["arg_opt_prefix"] = arg;
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_gray(unsigned q, const std::string& alpha, const std::string& stat, std::int64_t nmax,
             std::ostream& out) {
  auto r = gray_gen_poly(q, ExactScalar::parse(alpha), static_cast<std::uint64_t>(nmax),
                         stat == "digit-sum" ? GrayStatistic::digit_sum
                                             : GrayStatistic::nonzero_digits);
  json rep;
  rep["q"] = q;
  rep["statistic"] = stat;
  rep["rho"] = fixed_digits(r.rho);
  rep["match"] = r.match;
  json values = json::array();
  for (std::int64_t n = 0; n <= std::min<std::int64_t>(nmax, 32); ++n)
    values.push_back(scalar_json(r.direct[static_cast<size_t>(n)]));
  rep["values_prefix"] = values;
  out << rep.dump(2) << "\n";
  return r.match ? 0 : 1;
}

int cmd_binom(unsigned q, std::int64_t nmax, std::ostream& out) {
  auto counts = binom_not_div(q, static_cast<std::uint64_t>(nmax));
  auto spec = binomial_spec(q);
  auto f = qary_eval_q(spec, nmax);
  bool match = true;
  std::int64_t first_mismatch = 0;
  for (std::int64_t n = 1; n <= nmax; ++n)
    if (mpq_class(static_cast<unsigned long>(counts[static_cast<size_t>(n)])) !=
        f[static_cast<size_t>(n)]) {
      match = false;
      first_mismatch = n;
      break;
    }
  double rho = spec.rho();
  bool stein_ok = true;
  double A = spec.coeff_sum().approx_d();
  for (std::int64_t n = 1; n <= nmax; ++n) {
    double ratio = f[static_cast<size_t>(n)].get_d() / std::pow(static_cast<double>(n), rho);
    if (ratio > 1.0 + 1e-9 || ratio < 1.0 / A - 1e-9) stein_ok = false;
  }
  json rep;
  rep["q"] = q;
  rep["rho"] = fixed_digits(rho);
  rep["recurrence_matches_count"] = match;
  if (!match) rep["first_mismatch"] = first_mismatch;
  rep["stein_bound_ok"] = stein_ok;
  json values = json::array();
  for (std::int64_t n = 1; n <= std::min<std::int64_t>(nmax, 32); ++n)
    values.push_back(static_cast<std::uint64_t>(counts[static_cast<size_t>(n)]));
  rep["counts_prefix"] = values;
  out << rep.dump(2) << "\n";
  return match && stein_ok ? 0 : 1;
}

int cmd_validate(bool all, const std::string& id, unsigned depth, bool offline, bool use_bfile,
                 std::ostream& out, std::ostream& err) {
  std::vector<const Fixture*> targets;
  if (all)
    for (const auto& f : corpus()) targets.push_back(&f);
  else
    targets.push_back(&fixture(id));
  bool ok = true;
  for (const Fixture* f : targets) {
    auto rep = validate_fixture(*f, depth);
    bool this_ok = rep.passed();
    std::string bnote;
    if (use_bfile) {
      try {
        CachePolicy policy = default_cache_policy();
        policy.offline = policy.offline || offline;
        auto b = compare_bfile(*f, fetch_bfile(f->oeis_id, policy));
        bnote = b.match ? " bfile=ok(" + std::to_string(b.compared) + ")"
                        : " bfile=MISMATCH@" + std::to_string(b.first_mismatch);
        if (b.shift_applied != 0) bnote += " shift=" + std::to_string(b.shift_applied);
        this_ok = this_ok && b.match;
      } catch (const FetchError& e) {
        bnote = std::string(" bfile=unavailable (") + e.what() + ")";
      }
    }
    out << (this_ok ? "[PASS] " : "[FAIL] ") << f->oeis_id << " recurrence="
        << (rep.recurrence_ok ? "ok" : "FAIL") << " identity="
        << (rep.identity_ok ? "ok" : "FAIL") << " decomposition="
        << (rep.decomposition_ok ? "ok" : "FAIL")
        << (rep.oracle_present ? " oracle=yes" : " oracle=no") << bnote;
    if (!f->note.empty()) out << "  # " << f->note;
    out << "\n";
    if (!this_ok) {
      err << f->oeis_id << ": " << rep.detail << " (first failure n=" << rep.first_failure
          << ")\n";
      ok = false;
    }
  }
  out << (ok ? "all fixtures passed" : "validation failures present") << " (" << targets.size()
      << " fixtures, depth " << depth << ")\n";
  return ok ? 0 : 1;
}

int cmd_plot_data(const SpecFlags& flags, unsigned points, int synth_k, std::int64_t nmax,
                  std::ostream& out) {
  RecurrenceSpec spec = flags.build();
  ClosedForm cf(spec);
  std::optional<FourierSeries> series;
  if (synth_k > 0) {
    FourierEngine eng(cf);
    series = eng.series(-synth_k, synth_k, true);
  }
  out << "t,P_direct" << (synth_k > 0 ? ",P_synth_K" : "") << "\n";
  for (unsigned j = 0; j < points; ++j) {
    long double t = static_cast<long double>(j) / points;
    out << fmt12(t) << "," << fmt12(cf.p_periodic(t));
    if (series) out << "," << fmt12(series->synthesize(t));
    out << "\n";
  }
  out << "\nn,f_over_nrho\n";
  auto table = eval_sequence(cf.dec().start_normalized, nmax);
  long double rho = static_cast<long double>(cf.dec().rho);
  for (std::int64_t n = 1; n <= nmax; ++n)
    out << n << ","
        << fmt12(table[static_cast<size_t>(n)].approx() /
                 std::pow(static_cast<long double>(n), rho))
        << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"divide-and-conquer recurrence analyzer"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "decompose a recurrence");
  SpecFlags an_flags;
  an_flags.attach(analyze);
  std::int64_t an_nmax = 4096;
  unsigned an_samples = 33;
  analyze->add_option("--nmax", an_nmax, "verify the identity up to n");
  analyze->add_option("--samples", an_samples, "periodic samples in the report");

  // phi
  auto* phi = app.add_subcommand("phi", "interpolation function CSV");
  std::string ph_alpha = "2", ph_beta = "1", ph_construction = "digital";
  unsigned ph_level = 8;
  std::uint64_t ph_mc = 100000, ph_seed = 1;
  phi->add_option("--alpha", ph_alpha);
  phi->add_option("--beta", ph_beta);
  phi->add_option("--level", ph_level, "dyadic grid level");
  phi->add_option("--construction", ph_construction)
      ->check(CLI::IsMember({"digital", "iterate", "mc"}));
  phi->add_option("--mc-samples", ph_mc);
  phi->add_option("--seed", ph_seed);

  // fourier
  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of P");
  SpecFlags fo_flags;
  fo_flags.attach(fourier);
  std::string fo_krange = "0..5", fo_method = "auto";
  double fo_tol = 1e-10;
  int fo_synth = 0;
  unsigned fo_points = 256;
  fourier->add_option("--k-range", fo_krange, "k range a..b");
  fourier->add_option("--method", fo_method)->check(CLI::IsMember({"auto", "integral", "zeta"}));
  fourier->add_option("--tol", fo_tol);
  fourier->add_option("--synth", fo_synth, "emit synthesized P with |k| <= K");
  fourier->add_option("--points", fo_points);

  // equiv
  auto* equiv = app.add_subcommand("equiv", "periodic equivalence of two specs");
  std::string eq_a, eq_b;
  unsigned eq_samples = 256;
  equiv->add_option("specA", eq_a)->required();
  equiv->add_option("specB", eq_b)->required();
  equiv->add_option("--samples", eq_samples);

  // qary
  auto* qary = app.add_subcommand("qary", "q-ary recurrence evaluation");
  unsigned q_q = 3;
  std::string q_alphas = "1,1,1", q_toll = "0";
  std::vector<std::string> q_init;
  std::int64_t q_nmax = 256;
  qary->add_option("--q", q_q);
  qary->add_option("--alphas", q_alphas, "comma-separated alpha_0..alpha_{q-1}");
  qary->add_option("--toll", q_toll);
  qary->add_option("--initial", q_init, "n=value (repeatable)");
  qary->add_option("--nmax", q_nmax);

  // minmax
  auto* minmax = app.add_subcommand("minmax", "min/max split recurrences");
  std::string mm_alpha = "1", mm_beta = "2", mm_mode = "min";
  std::int64_t mm_nmax = 1024;
  minmax->add_option("--alpha", mm_alpha);
  minmax->add_option("--beta", mm_beta);
  minmax->add_option("--mode", mm_mode)->check(CLI::IsMember({"min", "max"}));
  minmax->add_option("--nmax", mm_nmax);

  // gray
  auto* gray = app.add_subcommand("gray", "Gray-code generating polynomials");
  unsigned gr_q = 3;
  std::string gr_alpha = "2", gr_stat = "nonzero-digits";
  std::int64_t gr_nmax = 729;
  gray->add_option("--q", gr_q);
  gray->add_option("--alpha", gr_alpha);
  gray->add_option("--statistic", gr_stat)
      ->check(CLI::IsMember({"nonzero-digits", "digit-sum"}));
  gray->add_option("--nmax", gr_nmax);

  // binom
  auto* binom = app.add_subcommand("binom", "Pascal entries not divisible by a prime");
  unsigned bi_q = 3;
  std::int64_t bi_nmax = 729;
  binom->add_option("--q", bi_q);
  binom->add_option("--nmax", bi_nmax);

  // validate
  auto* validate = app.add_subcommand("validate", "validate the embedded corpus");
  bool va_all = false, va_offline = false, va_bfile = false;
  std::string va_id;
  unsigned va_depth = 12;
  validate->add_flag("--all", va_all);
  validate->add_option("--id", va_id);
  validate->add_flag("--offline", va_offline);
  validate->add_flag("--bfile", va_bfile, "also compare against fetched/cached b-files");
  validate->add_option("--depth", va_depth, "check up to n = 2^depth");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "CSV of P(t) and f(n)/n^rho");
  SpecFlags pl_flags;
  pl_flags.attach(plot);
  unsigned pl_points = 256;
  int pl_synth = 0;
  std::int64_t pl_nmax = 1024;
  plot->add_option("--points", pl_points);
  plot->add_option("--synth", pl_synth, "add a K-term synthesis column");
  plot->add_option("--nmax", pl_nmax);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "{\"error\":{\"code\":\"usage\",\"message\":" << json(e.what()).dump() << "}}\n";
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(an_flags, an_nmax, an_samples, out);
    if (*phi) return cmd_phi(ph_alpha, ph_beta, ph_level, ph_construction, ph_mc, ph_seed, out);
    if (*fourier)
      return cmd_fourier(fo_flags, fo_krange, fo_method, static_cast<long double>(fo_tol),
                         fo_synth, fo_points, out);
    if (*equiv) return cmd_equiv(eq_a, eq_b, eq_samples, out);
    if (*qary) return cmd_qary(q_q, q_alphas, q_toll, q_init, q_nmax, out);
    if (*minmax) return cmd_minmax(mm_alpha, mm_beta, mm_mode, mm_nmax, out);
    if (*gray) return cmd_gray(gr_q, gr_alpha, gr_stat, gr_nmax, out);
    if (*binom) return cmd_binom(bi_q, bi_nmax, out);
    if (*validate) {
      if (!va_all && va_id.empty()) {
        err << "{\"error\":{\"code\":\"usage\",\"message\":\"need --all or --id\"}}\n";
        return 2;
      }
      return cmd_validate(va_all, va_id, va_depth, va_offline, va_bfile, out, err);
    }
    if (*plot) return cmd_plot_data(pl_flags, pl_points, pl_synth, pl_nmax, out);
  } catch (const TollParseError& e) {
    err << "{\"error\":{\"code\":\"toll-parse\",\"message\":" << json(e.what()).dump() << "}}\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "{\"error\":{\"code\":\"config\",\"message\":" << json(e.what()).dump() << "}}\n";
    return 2;
  } catch (const DivergenceError& e) {
    err << "{\"error\":{\"code\":\"divergence\",\"message\":" << json(e.what()).dump() << "}}\n";
    return 1;
  } catch (const std::exception& e) {
    err << "{\"error\":{\"code\":\"internal\",\"message\":" << json(e.what()).dump() << "}}\n";
    return 1;
  }
  return 2;
}

}  // namespace dcosc

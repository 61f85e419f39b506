#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dcosc/cli.hpp"
#include "dcosc/spec_json.hpp"
#include "dcosc/toll_lang.hpp"

using namespace dcosc;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::initializer_list<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::vector<std::string>(args), out, err);
  return CliRun{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze: the sowing-game example has residual 0 and poly part -1/2") {
  auto r = cli({"analyze", "--alpha", "2", "--beta", "1", "--toll", "1 + odd", "--f1", "0",
                "--nmax", "4096"});
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["identity"]["all_zero"].get<bool>());
  CHECK(rep["identity"]["exact"].get<bool>());
  CHECK(rep["poly_part"].get<std::string>() == "-1/2");
  CHECK(rep["kind"].get<std::string>() == "periodic");
  CHECK(rep["convergence"]["verdict"].get<std::string>() == "verified");
}

TEST_CASE("analyze (2,1) with the floor toll: poly part -n") {
  auto r = cli({"analyze", "--alpha", "2", "--beta", "1", "--toll", "floor(n/2)", "--f1", "0",
                "--nmax", "4096"});
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["poly_part"].get<std::string>() == "-n");
  CHECK(rep["identity"]["all_zero"].get<bool>());
  CHECK(rep["identity"]["residual_max"].get<double>() == 0.0);
}

TEST_CASE("analyze with the floor toll: poly part -n (the S - n family)") {
  auto r = cli({"analyze", "--alpha", "1", "--beta", "2", "--toll", "floor(n/2)", "--f1", "0",
                "--nmax", "2048"});
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["poly_part"].get<std::string>() == "-n");
  CHECK(rep["identity"]["all_zero"].get<bool>());
}

TEST_CASE("deterministic output: identical invocations byte-identical") {
  auto a = cli({"analyze", "--alpha", "2", "--beta", "2", "--toll", "floor(n^2/4)", "--nmax",
                "512"});
  auto b = cli({"analyze", "--alpha", "2", "--beta", "2", "--toll", "floor(n^2/4)", "--nmax",
                "512"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto p1 = cli({"phi", "--alpha", "3", "--beta", "1", "--level", "6", "--construction", "mc",
                 "--mc-samples", "20000", "--seed", "7"});
  auto p2 = cli({"phi", "--alpha", "3", "--beta", "1", "--level", "6", "--construction", "mc",
                 "--mc-samples", "20000", "--seed", "7"});
  CHECK(p1.out == p2.out);
}

TEST_CASE("phi subcommand emits the CSV grid") {
  auto r = cli({"phi", "--alpha", "1", "--beta", "2", "--level", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 6) == "t,phi\n");
  // phi(1/2) = 2/3 on the level-3 grid (row j = 4)
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  for (int j = 0; j <= 4; ++j) std::getline(in, line);
  CHECK(line.substr(0, 4) == "0.5,");
  CHECK(std::abs(std::stod(line.substr(4)) - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("fourier subcommand: the (2,2) mean value") {
  auto r = cli({"fourier", "--alpha", "2", "--beta", "2", "--toll", "0", "--f1", "1",
                "--k-range", "0..5"});
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["coefficients"][0]["k"].get<int>() == 0);
  CHECK(rep["coefficients"][0]["re"].get<double>() == doctest::Approx(1.082021).epsilon(1e-5));
  CHECK(rep["coefficients"][0]["method"].get<std::string>() == "zeta");
}

TEST_CASE("equiv subcommand on spec files") {
  RecurrenceSpec a;
  a.alpha = ExactScalar(2);
  a.beta = ExactScalar(1);
  a.initial[1] = ExactScalar(1);
  RecurrenceSpec b;
  b.alpha = ExactScalar(2);
  b.beta = ExactScalar(1);
  b.toll = parse_toll("floor(n/2)");
  b.initial[1] = ExactScalar(0);
  std::string fa = "/tmp/dcosc_spec_a.json", fb = "/tmp/dcosc_spec_b.json";
  std::ofstream(fa) << spec_to_json(a);
  std::ofstream(fb) << spec_to_json(b);
  auto r = cli({"equiv", fa, fb});
  CHECK(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["verdict"].get<std::string>() == "equivalent");
  CHECK(rep["scale"].get<std::string>() == "1");
  std::remove(fa.c_str());
  std::remove(fb.c_str());
}

TEST_CASE("qary, minmax, gray, binom subcommands") {
  auto q = cli({"qary", "--q", "3", "--alphas", "3,2,1", "--toll", "0", "--initial", "1=1",
                "--initial", "2=3", "--nmax", "200"});
  CHECK(q.code == 0);
  CHECK(json::parse(q.out)["identity_spotcheck"].get<bool>());

  auto m = cli({"minmax", "--alpha", "1", "--beta", "2", "--mode", "min", "--nmax", "256"});
  CHECK(m.code == 0);
  json mrep = json::parse(m.out);
  CHECK(mrep["region_holds"].get<bool>());
  CHECK(mrep["equals_fundamental"].get<bool>());

  auto g = cli({"gray", "--q", "4", "--alpha", "1/2", "--statistic", "digit-sum", "--nmax",
                "300"});
  CHECK(g.code == 0);
  CHECK(json::parse(g.out)["match"].get<bool>());

  auto b = cli({"binom", "--q", "5", "--nmax", "400"});
  CHECK(b.code == 0);
  json brep = json::parse(b.out);
  CHECK(brep["recurrence_matches_count"].get<bool>());
  CHECK(brep["stein_bound_ok"].get<bool>());
}

TEST_CASE("validate single fixture and usage errors") {
  auto r = cli({"validate", "--id", "A006046", "--depth", "7", "--offline"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] A006046") != std::string::npos);

  auto bad = cli({"validate"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("usage") != std::string::npos);

  auto badtoll = cli({"analyze", "--toll", "wibble("});
  CHECK(badtoll.code == 2);
  CHECK(badtoll.err.find("toll-parse") != std::string::npos);

  auto nosub = cli({"frobnicate"});
  CHECK(nosub.code == 2);
}

TEST_CASE("plot-data emits both documented CSV blocks") {
  auto r = cli({"plot-data", "--alpha", "2", "--beta", "2", "--toll", "0", "--f1", "1",
                "--points", "16", "--synth", "8", "--nmax", "32"});
  CHECK(r.code == 0);
  CHECK(r.out.find("t,P_direct,P_synth_K") == 0);
  CHECK(r.out.find("\nn,f_over_nrho\n") != std::string::npos);
  // first P row is P(0) = 1 for S_{2,2}
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.substr(0, 2) == "0,");
  CHECK(std::abs(std::stod(line.substr(2)) - 1.0) < 1e-9);
}

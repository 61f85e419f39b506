#pragma once

// The embedded fixture corpus: recurrences transcribed from the catalog of
// integer sequences, each with its claimed closed identity (relation to the
// fundamental solution and polynomial parts), an independent combinatorial
// oracle where one exists, and the machinery cross-checks. Embedded terms
// are generated from the specs at startup and double-checked against the
// oracles, so offline validation needs no network.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcosc/bfile.hpp"
#include "dcosc/closed_form.hpp"
#include "dcosc/qary.hpp"

namespace dcosc {

// f(n) = sum of coeff * basis(n) with basis one of: the fundamental solution
// S_{alpha,beta}, a power n^k, or another fixture's sequence.
struct RelTerm {
  mpq_class coeff;
  enum class Basis { fundamental, power, fixture } basis;
  int power = 0;          // for Basis::power
  std::string fixture_id; // for Basis::fixture
};

struct Fixture {
  std::string oeis_id;
  std::string description;
  enum class Kind { binary, qary, mixed_sign } kind = Kind::binary;
  RecurrenceSpec spec;        // binary / mixed_sign
  std::optional<QarySpec> qspec;
  std::vector<RelTerm> identity;  // empty: no claimed relation
  std::int64_t bfile_shift = 0;   // f(n) = bfile(n + shift)
  std::function<mpz_class(std::uint64_t)> oracle;  // independent ground truth
  std::uint64_t oracle_limit = 2048;  // oracle affordable up to here
  std::int64_t check_start = 1;       // identities/oracles compared from here
  std::string source;                 // catalog anchor / table name
  std::string note;                   // e.g. "published recurrence incorrect"
  bool decomposable = true;           // run the decomposition residual check
};

const std::vector<Fixture>& corpus();
const Fixture& fixture(const std::string& oeis_id);

// First `count` terms generated from the spec (the embedded ground truth).
std::vector<mpz_class> embedded_terms(const Fixture& fix, std::uint64_t count = 128);

struct FixtureReport {
  std::string oeis_id;
  bool recurrence_ok = false;   // oracle (or regenerated table) matches
  bool identity_ok = false;     // claimed relation exact
  bool decomposition_ok = false;
  bool oracle_present = false;
  std::int64_t first_failure = 0;
  std::string detail;
  bool passed() const {
    return recurrence_ok && identity_ok && decomposition_ok;
  }
};

FixtureReport validate_fixture(const Fixture& fix, unsigned depth);

// Compare embedded terms against a fetched b-file (honors bfile_shift).
struct BFileReport {
  bool match = false;
  std::int64_t compared = 0;
  std::int64_t first_mismatch = 0;
  std::int64_t shift_applied = 0;
};
BFileReport compare_bfile(const Fixture& fix, const BFile& bfile, std::uint64_t count = 128);

}  // namespace dcosc

#pragma once

// OEIS b-file handling: the "index value" line format, a polite rate-limited
// HTTP client, and a content-addressed disk cache. Offline mode serves the
// cache (or embedded data) only.
//
// Environment: DC_OSC_CACHE_DIR (cache location), DC_OSC_OEIS_BASE (base URL
// override), DC_OSC_OFFLINE=1 (no network).

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace dcosc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FetchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lines "index value", '#' comments ignored, arbitrary-precision values;
// indices need not start at 1.
struct BFile {
  std::map<std::int64_t, mpz_class> terms;
  std::int64_t first_index() const { return terms.empty() ? 0 : terms.begin()->first; }
};
BFile parse_bfile(const std::string& text);

struct CachePolicy {
  std::string cache_dir;     // default: DC_OSC_CACHE_DIR or ~/.cache/dcosc
  bool offline = false;      // default: DC_OSC_OFFLINE
  std::string base_url;      // default: DC_OSC_OEIS_BASE or https://oeis.org
  double min_delay_s = 2.0;  // polite sequential fetching
};
CachePolicy default_cache_policy();

// Fetch b<id>.txt through the cache. Cache files hold the verbatim bytes
// with a sidecar JSON {id, fetched_at, sha256}.
BFile fetch_bfile(const std::string& oeis_id, const CachePolicy& policy);

// Raw text access (cache inspection in tests).
std::optional<std::string> cached_bfile_text(const std::string& oeis_id,
                                             const CachePolicy& policy);

std::string sha256_hex(const std::string& bytes);

}  // namespace dcosc

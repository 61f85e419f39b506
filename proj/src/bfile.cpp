#include "dcosc/bfile.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace dcosc {

namespace fs = std::filesystem;

BFile parse_bfile(const std::string& text) {
  BFile out;
  std::istringstream in(text);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    std::istringstream ls(line.substr(i));
    std::string idx_tok, val_tok;
    if (!(ls >> idx_tok >> val_tok))
      throw ParseError("b-file line " + std::to_string(lineno) + ": expected 'index value'");
    std::string rest;
    if (ls >> rest && !rest.empty() && rest[0] != '#')
      throw ParseError("b-file line " + std::to_string(lineno) + ": trailing token '" + rest + "'");
    try {
      size_t used = 0;
      std::int64_t idx = std::stoll(idx_tok, &used);
      if (used != idx_tok.size()) throw std::invalid_argument(idx_tok);
      mpz_class val;
      if (val.set_str(val_tok, 10) != 0) throw std::invalid_argument(val_tok);
      out.terms[idx] = val;
    } catch (const std::exception&) {
      throw ParseError("b-file line " + std::to_string(lineno) + ": non-integer token");
    }
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

CachePolicy default_cache_policy() {
  CachePolicy p;
  if (const char* d = std::getenv("DC_OSC_CACHE_DIR")) {
    p.cache_dir = d;
  } else if (const char* home = std::getenv("HOME")) {
    p.cache_dir = std::string(home) + "/.cache/dcosc";
  } else {
    p.cache_dir = ".dcosc-cache";
  }
  if (const char* b = std::getenv("DC_OSC_OEIS_BASE")) p.base_url = b;
  else p.base_url = "https://oeis.org";
  if (const char* off = std::getenv("DC_OSC_OFFLINE")) p.offline = std::string(off) == "1";
  return p;
}

namespace {

std::string bfile_name(const std::string& id) {
  // "A006046" -> "b006046.txt"
  if (id.size() < 2 || (id[0] != 'A' && id[0] != 'a'))
    throw FetchError("bad OEIS id '" + id + "'");
  return "b" + id.substr(1) + ".txt";
}

std::mutex g_fetch_mutex;
std::chrono::steady_clock::time_point g_last_fetch{};

}  // namespace

std::optional<std::string> cached_bfile_text(const std::string& oeis_id,
                                             const CachePolicy& policy) {
  fs::path path = fs::path(policy.cache_dir) / bfile_name(oeis_id);
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BFile fetch_bfile(const std::string& oeis_id, const CachePolicy& policy) {
  if (auto cached = cached_bfile_text(oeis_id, policy)) return parse_bfile(*cached);
  if (policy.offline)
    throw FetchError("offline and '" + oeis_id + "' is not cached");

  // Polite sequential fetching: one request per min_delay_s across threads.
  std::lock_guard<std::mutex> lock(g_fetch_mutex);
  auto now = std::chrono::steady_clock::now();
  if (g_last_fetch.time_since_epoch().count() != 0) {
    auto min_gap = std::chrono::duration<double>(policy.min_delay_s);
    auto elapsed = now - g_last_fetch;
    if (elapsed < min_gap)
      std::this_thread::sleep_for(std::chrono::duration<double>(min_gap) - elapsed);
  }
  g_last_fetch = std::chrono::steady_clock::now();

  httplib::Client client(policy.base_url);
  client.set_follow_location(true);
  std::string target = "/" + oeis_id + "/" + bfile_name(oeis_id);
  auto res = client.Get(target, {{"User-Agent", "dcosc/0.1 (recurrence validation client)"}});
  if (!res || res->status != 200)
    throw FetchError("fetch of " + oeis_id + " failed" +
                     (res ? " (status " + std::to_string(res->status) + ")" : ""));
  BFile parsed = parse_bfile(res->body);  // validate before caching

  fs::create_directories(policy.cache_dir);
  fs::path path = fs::path(policy.cache_dir) / bfile_name(oeis_id);
  {
    std::ofstream out(path, std::ios::binary);
    out << res->body;
  }
  nlohmann::json meta;
  meta["id"] = oeis_id;
  meta["fetched_at"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  meta["sha256"] = sha256_hex(res->body);
  std::ofstream meta_out(path.string() + ".meta.json");
  meta_out << meta.dump(2) << "\n";
  return parsed;
}

}  // namespace dcosc

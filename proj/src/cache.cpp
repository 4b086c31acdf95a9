#include "patcover/cache.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "patcover/error.hpp"

namespace patcover {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string problem_hash(const std::string& command, const Json& inputs, std::uint64_t seed) {
  return sha256_hex(canonical_dump({{"command", command}, {"inputs", inputs}, {"seed", seed}}));
}

Json seal_record(Json record) {
  record["outputs_sha256"] = sha256_hex(canonical_dump(record.value("outputs", Json::object())));
  return record;
}

bool record_digest_ok(const Json& record) {
  return record.is_object() && record.contains("outputs") && record.contains("outputs_sha256") &&
         record.at("outputs_sha256") == sha256_hex(canonical_dump(record.at("outputs")));
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

std::filesystem::path ResultCache::quarantine_path() const {
  auto p = path_;
  p += ".quarantine";
  return p;
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::vector<std::string> lines;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  return lines;
}

bool line_ok(const std::string& line, Json& parsed, const ResultCache::Verifier& verify) {
  try {
    parsed = Json::parse(line);
  } catch (const Json::exception&) {
    return false;
  }
  if (!record_digest_ok(parsed)) return false;
  try {
    return !verify || verify(parsed);
  } catch (const Error&) {
    return false;
  }
}

void rewrite(const std::filesystem::path& path, const std::filesystem::path& quarantine,
             const std::vector<std::string>& keep, const std::vector<std::string>& bad) {
  if (bad.empty()) return;
  {
    std::ofstream q(quarantine, std::ios::app);
    for (const auto& l : bad) q << l << '\n';
    if (!q) fail(ErrorCode::CacheCorrupt, "cannot write quarantine file " + quarantine.string());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& l : keep) out << l << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

ResultCache::Lookup ResultCache::lookup(const std::string& hash, const Verifier& verify) const {
  Lookup res;
  if (!std::filesystem::exists(path_)) return res;
  std::vector<std::string> keep, bad;
  for (const auto& line : read_lines(path_)) {
    Json parsed;
    bool mine = line.find(hash) != std::string::npos;
    if (!mine) {
      keep.push_back(line);
      continue;
    }
    if (line_ok(line, parsed, verify) && parsed.value("hash", "") == hash) {
      if (!res.record) res.record = parsed;
      keep.push_back(line);
    } else {
      bad.push_back(line);
    }
  }
  res.quarantined = bad.size();
  rewrite(path_, quarantine_path(), keep, bad);
  return res;
}

void ResultCache::append(const Json& record) const {
  Json line = record;
  line["cached_at"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  std::ofstream out(path_, std::ios::app);
  out << canonical_dump(line) << '\n';
  if (!out) fail(ErrorCode::CacheCorrupt, "cannot append to cache " + path_.string());
}

ResultCache::Audit ResultCache::audit(const Verifier& verify) const {
  Audit a;
  if (!std::filesystem::exists(path_)) return a;
  std::vector<std::string> keep, bad;
  for (const auto& line : read_lines(path_)) {
    ++a.records;
    Json parsed;
    if (line_ok(line, parsed, verify)) {
      keep.push_back(line);
      ++a.valid;
    } else {
      bad.push_back(line);
    }
  }
  a.quarantined = bad.size();
  rewrite(path_, quarantine_path(), keep, bad);
  return a;
}

}  // namespace patcover

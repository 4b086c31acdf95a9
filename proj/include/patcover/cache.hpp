#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patcover/json_io.hpp"

namespace patcover {

std::string sha256_hex(std::string_view data);

/// Compact dump with object keys sorted, the form that is hashed.
std::string canonical_dump(const Json& j);

/// Hash of a request: command, inputs and seed.
std::string problem_hash(const std::string& command, const Json& inputs, std::uint64_t seed);

/// Append-only JSONL store of result records. Each line carries `hash`, the record,
/// and `outputs_sha256` over the canonical outputs.
class ResultCache {
 public:
  /// Re-checks the witnesses inside a record; false marks it stale.
  using Verifier = std::function<bool(const Json& record)>;

  explicit ResultCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path quarantine_path() const;

  struct Lookup {
    std::optional<Json> record;
    std::size_t quarantined = 0;
  };

  /// Returns the first record with this hash whose digest and witnesses check out; the
  /// failing ones are moved to the quarantine file.
  Lookup lookup(const std::string& hash, const Verifier& verify) const;
  void append(const Json& record) const;

  struct Audit {
    std::size_t records = 0, valid = 0, quarantined = 0;
  };
  /// Checks every line and quarantines the bad ones.
  Audit audit(const Verifier& verify) const;

 private:
  std::filesystem::path path_;
};

/// Adds outputs_sha256 to a record.
Json seal_record(Json record);
bool record_digest_ok(const Json& record);

}  // namespace patcover

// Persistent on-disk cache of computed tables.
//
// One file per key. A record is the 8-byte magic "HINVCACH", a little-endian
// u32 schema version, then the fields kind, system hash, indices and value,
// each as a u64 byte length followed by the bytes. Records are write-once:
// an existing entry is never replaced, and a record with another schema
// version or a mismatched key reads as a miss.

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "hinv/hecke.hpp"

namespace hinv::cache {

inline constexpr std::uint32_t kSchemaVersion = 1;

struct Key {
  std::uint64_t system_hash = 0;
  std::string kind;     // e.g. "kl"
  std::string indices;  // free-form discriminator, e.g. the window size
};

std::string encode_record(const Key& key, const std::string& value);
/// nullopt on bad magic, another schema version, truncation or a key mismatch.
std::optional<std::string> decode_record(const std::string& bytes, const Key& key);

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  [[nodiscard]] std::optional<std::string> get(const Key& key) const;
  /// Returns false when the entry already existed (it is left untouched).
  bool put(const Key& key, const std::string& value);
  [[nodiscard]] std::filesystem::path path_of(const Key& key) const;

  [[nodiscard]] std::size_t hits() const { return hits_; }
  [[nodiscard]] std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
  mutable std::atomic<std::size_t> hits_{0}, misses_{0};
};

std::string encode_polys(const std::vector<LaurentPoly>& polys);
std::optional<std::vector<LaurentPoly>> decode_polys(const std::string& bytes);

/// The KL table of `table`, read from the cache when present, otherwise
/// computed and stored. A null cache just computes.
std::shared_ptr<const hecke::KLTable> kl_table(Cache* cache, const coxeter::ElementTable& table);

}  // namespace hinv::cache

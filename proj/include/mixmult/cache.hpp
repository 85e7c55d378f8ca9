#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "mixmult/graded.hpp"

namespace mixmult {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s);

struct CacheStats {
  std::size_t loaded = 0;
  std::size_t corrupt = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t appended = 0;
  std::size_t audited = 0;
  std::size_t mismatches = 0;
};

/// Cells keyed by (hash of the function fingerprint, point).  With a path,
/// records are appended to a text file, one per line:
///
///   c1 <fingerprint hash> <p1,p2,...> <value> <checksum>
///
/// where the checksum is the FNV-1a hash of everything before it.  Lines
/// that fail to parse or verify are skipped and counted.  Appends from
/// several threads of one process are serialized; nothing guards against
/// two processes writing the same file.
///
/// Audit: each hit is, with probability `audit_rate`, reported as a miss.
/// The caller then recomputes the cell and stores it, and the store
/// compares the fresh value with the cached one.
class FileCache : public CellStore {
 public:
  /// In-memory only.
  FileCache() = default;
  explicit FileCache(const std::string& path);

  std::optional<std::int64_t> lookup(const std::string& fingerprint,
                                     const GridPoint& point) override;
  void store(const std::string& fingerprint, const GridPoint& point,
             std::int64_t value) override;

  void set_audit(double rate, std::uint64_t seed);
  CacheStats stats() const;
  std::vector<std::string> warnings() const;
  void flush();

 private:
  using Key = std::pair<std::uint64_t, GridPoint>;

  std::string path_;
  std::ofstream out_;
  mutable std::mutex mutex_;
  std::map<Key, std::int64_t> cells_;
  std::map<Key, std::int64_t> pending_audit_;
  std::mt19937_64 rng_{0};
  double audit_rate_ = 0.0;
  CacheStats stats_;
  std::vector<std::string> warnings_;
};

std::string format_record(std::uint64_t key, const GridPoint& point, std::int64_t value);

}  // namespace mixmult

#include "mixmult/cache.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace mixmult {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <typename T>
bool read_number(const std::string& s, T& out, int base = 10) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_record(const std::string& line, std::uint64_t& key, GridPoint& point,
                  std::int64_t& value) {
  std::istringstream is(line);
  std::string tag, k, pt, v, sum;
  std::string extra;
  if (!(is >> tag >> k >> pt >> v >> sum) || (is >> extra) || tag != "c1") return false;
  std::uint64_t check = 0;
  if (!read_number(sum, check, 16)) return false;
  const auto body_end = line.rfind(' ');
  if (fnv1a(line.substr(0, body_end)) != check) return false;
  if (!read_number(k, key, 16) || !read_number(v, value)) return false;
  point.clear();
  std::size_t start = 0;
  for (;;) {
    const auto comma = pt.find(',', start);
    int c = 0;
    if (!read_number(pt.substr(start, comma - start), c)) return false;
    point.push_back(c);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return true;
}

}  // namespace

std::string format_record(std::uint64_t key, const GridPoint& point, std::int64_t value) {
  std::string body = "c1 " + hex(key) + " ";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) body += ',';
    body += std::to_string(point[i]);
  }
  body += " " + std::to_string(value);
  return body + " " + hex(fnv1a(body));
}

FileCache::FileCache(const std::string& path) : path_(path) {
  {
    std::ifstream in(path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::uint64_t key = 0;
      GridPoint point;
      std::int64_t value = 0;
      if (!parse_record(line, key, point, value)) {
        ++stats_.corrupt;
        if (warnings_.size() < 10) {
          warnings_.push_back("cache " + path + " line " + std::to_string(lineno) +
                              ": corrupt record skipped");
        }
        continue;
      }
      cells_[{key, point}] = value;
      ++stats_.loaded;
    }
  }
  if (stats_.corrupt > 10) {
    warnings_.push_back("cache " + path + ": " + std::to_string(stats_.corrupt) +
                        " corrupt records skipped in total");
  }
  out_.open(path, std::ios::app);
  if (!out_.is_open()) warnings_.push_back("cache " + path + " is not writable; running in memory");
}

void FileCache::set_audit(double rate, std::uint64_t seed) {
  std::lock_guard lock(mutex_);
  audit_rate_ = rate;
  rng_.seed(seed);
}

std::optional<std::int64_t> FileCache::lookup(const std::string& fingerprint,
                                              const GridPoint& point) {
  Key key{fnv1a(fingerprint), point};
  std::lock_guard lock(mutex_);
  auto it = cells_.find(key);
  if (it == cells_.end()) {
    ++stats_.misses;
    return std::nullopt;
  }
  if (audit_rate_ > 0 && std::uniform_real_distribution<double>(0, 1)(rng_) < audit_rate_) {
    pending_audit_.emplace(key, it->second);
    return std::nullopt;
  }
  ++stats_.hits;
  return it->second;
}

void FileCache::store(const std::string& fingerprint, const GridPoint& point,
                      std::int64_t value) {
  Key key{fnv1a(fingerprint), point};
  std::lock_guard lock(mutex_);
  auto audit = pending_audit_.find(key);
  if (audit != pending_audit_.end()) {
    ++stats_.audited;
    if (audit->second != value) {
      ++stats_.mismatches;
      warnings_.push_back("cache audit mismatch at " + hex(key.first) + ": cached " +
                          std::to_string(audit->second) + ", recomputed " +
                          std::to_string(value));
      cells_[key] = value;
      if (out_.is_open()) out_ << format_record(key.first, point, value) << '\n';
    }
    pending_audit_.erase(audit);
    return;
  }
  if (!cells_.emplace(key, value).second) return;
  if (out_.is_open()) {
    out_ << format_record(key.first, point, value) << '\n';
    ++stats_.appended;
  }
}

CacheStats FileCache::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

std::vector<std::string> FileCache::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

void FileCache::flush() {
  std::lock_guard lock(mutex_);
  if (out_.is_open()) out_.flush();
}

}  // namespace mixmult

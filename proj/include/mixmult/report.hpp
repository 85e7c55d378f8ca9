#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixmult/cache.hpp"
#include "mixmult/harness.hpp"
#include "mixmult/job.hpp"

namespace mixmult {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "mixmult-report/1";

using Json = nlohmann::ordered_json;

struct TaskResult {
  std::string kind;
  int line = 0;
  /// "ok", "error" or "refuted".
  std::string status = "ok";
  std::string error_kind;
  std::string error;
  Json result = Json::object();
  /// Filled by lengths tasks.
  std::vector<LengthTable> tables;
  std::vector<std::string> warnings;
  double elapsed_ms = 0;
};

struct Report {
  JobSpec job;
  std::string tool_version = kToolVersion;
  std::vector<TaskResult> tasks;
  std::vector<std::string> warnings;
  int exit_code = 0;
  double elapsed_ms = 0;
  CacheStats cache;
  std::size_t cells_from_cache = 0;
  std::size_t cells_computed = 0;
};

/// Extra task kinds, e.g. oracle-regen in the command-line tool.
using TaskHandler = std::function<Json(const JobSpec&, const TaskSpec&)>;

struct RunOptions {
  StabilizationPolicy policy;
  /// Tasks run concurrently on this many workers; cells use policy.threads.
  int task_threads = 1;
  /// Shared by every task; an in-memory cache is used when null.
  FileCache* cache = nullptr;
  std::map<std::string, TaskHandler> handlers;
};

Report run_job(const JobSpec& job, const RunOptions& opts = {});

enum class Format { Human, Json, Csv };
std::optional<Format> format_from_string(const std::string& s);

/// With include_volatile false, timing and cache statistics are left out
/// and the bytes depend only on the job and the tool version.
std::string emit(const Report& report, Format format, bool include_volatile = true);

// Structured forms, shared with the tests.
Json to_json(const CheckReport& r, const RingContext& ctx);
Json to_json(const VerificationCase& vc, const RingContext& ctx);
Json to_json(const MultiplicityReport& r);
Json to_json(const LengthTable& t);

}  // namespace mixmult

// mmult: run a job file and print or write its report.
//
// Exit codes: 0 all tasks succeeded, 1 a task failed or a theorem case was
// refuted, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "mixmult/report.hpp"
#include "oracle/corpus.hpp"

namespace {

using mixmult::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Cases from `corpus` (a corpus or case-list file, optional), plus `count`
// random cases, each with oracle values, written to `out`.
Json oracle_regen(const mixmult::TaskSpec& t, std::uint64_t default_seed) {
  const auto* out = t.find("out");
  if (!out) throw mixmult::Error(mixmult::ErrorKind::InvalidArgument, "oracle-regen needs 'out'");
  std::vector<oracle::CaseText> cases;
  if (const auto* in = t.find("corpus")) {
    const auto j = Json::parse(read_file(*in));
    for (const auto& c : j.at("cases")) cases.push_back(oracle::case_from_json(c));
  }
  const int count = t.find("count") ? mixmult::parse_int(*t.find("count")) : 0;
  const std::uint64_t seed =
      t.find("seed") ? static_cast<std::uint64_t>(mixmult::parse_int(*t.find("seed"))) : default_seed;
  for (auto& c : oracle::random_cases(seed, count)) cases.push_back(std::move(c));

  Json written = Json::array();
  Json skipped = Json::array();
  for (const auto& c : cases) {
    try {
      const auto setup = oracle::to_setup(c);
      const auto ex = oracle::expected_values(setup);
      bool all_zero = true;
      for (const auto& row : ex.entries) all_zero = all_zero && row.back() == 0;
      if (all_zero) {
        skipped.push_back(Json{{"name", c.name}, {"reason", "h vanishes at the base"}});
        continue;
      }
      Json entry = oracle::case_json(c);
      entry["expected"] = oracle::expected_json(ex, static_cast<int>(c.e.size()));
      written.push_back(entry);
    } catch (const std::exception& e) {
      skipped.push_back(Json{{"name", c.name}, {"reason", e.what()}});
    }
  }
  std::ofstream os(*out);
  if (!os) throw std::runtime_error("cannot write " + *out);
  os << Json{{"schema", oracle::kCorpusSchema}, {"cases", written}}.dump(2) << '\n';
  return Json{{"out", *out}, {"cases", written.size()}, {"skipped", skipped}};
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmult: mixed and Buchsbaum-Rim multiplicities of monomial modules"};
  std::string job_path;
  std::string out_path;
  std::string format;
  int window = 0;
  int base = 0;
  int kmax = 0;
  int threads = 0;
  bool no_cache = false;
  std::string cache_path;
  std::uint64_t seed = 0;
  double audit = -1;
  bool no_timing = false;

  app.add_option("--job", job_path, "job file")->envname("MMULT_JOB");
  app.add_option("--out", out_path, "write the report here instead of stdout")->envname("MMULT_OUT");
  app.add_option("--format", format, "human, json or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->envname("MMULT_FORMAT");
  app.add_option("--window", window, "stabilization window")->check(CLI::PositiveNumber)->envname("MMULT_WINDOW");
  app.add_option("--base", base, "starting base on every axis")->check(CLI::PositiveNumber)->envname("MMULT_BASE");
  app.add_option("--kmax", kmax, "cap on finiteness certificates")->check(CLI::PositiveNumber)->envname("MMULT_KMAX");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->envname("MMULT_THREADS");
  app.add_flag("--no-cache", no_cache, "do not read or write the cell cache")->envname("MMULT_NO_CACHE");
  app.add_option("--cache-path", cache_path, "cell cache file")->envname("MMULT_CACHE_PATH");
  app.add_option("--seed", seed, "seed for corpus randomization and cache audits")->envname("MMULT_SEED");
  app.add_option("--audit-rate", audit, "fraction of cache hits recomputed")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("MMULT_AUDIT_RATE");
  app.add_flag("--no-timing", no_timing, "leave timing and cache statistics out of the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (job_path.empty()) {
    std::cerr << "mmult: --job is required\n";
    return 2;
  }

  mixmult::JobSpec job;
  try {
    job = mixmult::parse_job(read_file(job_path));
  } catch (const mixmult::Error& e) {
    std::cerr << "mmult: " << job_path << ": " << mixmult::to_string(e.kind()) << ": " << e.what()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mmult: " << e.what() << '\n';
    return 2;
  }

  if (format.empty()) format = job.output.format.empty() ? "human" : job.output.format;
  if (out_path.empty()) out_path = job.output.path;

  mixmult::RunOptions opts;
  if (window > 0) opts.policy.window = window;
  if (base > 0) opts.policy.uniform_base = base;
  if (kmax > 0) opts.policy.kmax = kmax;
  if (threads > 0) {
    opts.policy.threads = threads;
    opts.task_threads = threads;
  }
  opts.handlers["oracle-regen"] = [seed](const mixmult::JobSpec&, const mixmult::TaskSpec& t) {
    return oracle_regen(t, seed);
  };

  std::unique_ptr<mixmult::FileCache> cache;
  if (no_cache) {
    cache = std::make_unique<mixmult::FileCache>();
  } else {
    if (cache_path.empty()) cache_path = env_or("HOME", ".") + "/.cache/mmult-cells.txt";
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(cache_path).parent_path(), ec);
    cache = std::make_unique<mixmult::FileCache>(cache_path);
  }
  cache->set_audit(audit >= 0 ? audit : 0.01, seed);
  opts.cache = cache.get();

  const auto report = mixmult::run_job(job, opts);
  const auto text = mixmult::emit(report, *mixmult::format_from_string(format), !no_timing);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
      std::cerr << "mmult: cannot write " << out_path << '\n';
      return 2;
    }
    os << text;
  }
  return report.exit_code;
}

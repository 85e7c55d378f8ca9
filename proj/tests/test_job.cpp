#include <random>

#include "doctest.h"
#include "mixmult/report.hpp"
#include "support.hpp"

using namespace support;

namespace {

const char* kMinimal = R"(version = 1

[ring]
d = 2
p = 1

[modules]
E1 = [1,0]@1 [0,1]@1

[task mixed]
j = 0
k0 = 1
k = [1]
)";

struct Failure {
  ErrorKind kind;
  std::string what;
};

Failure parse_failure(const std::string& text) {
  try {
    parse_job(text);
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  FAIL("expected a parse failure");
  return {ErrorKind::InvalidArgument, ""};
}

std::string job_text(const std::string& modules, const std::string& tasks) {
  return "version = 1\n[ring]\nd = 2\np = 1\n[modules]\n" + modules + "\n" + tasks;
}

Json run_json(const std::string& text) {
  return Json::parse(emit(run_job(parse_job(text)), Format::Json, false));
}

}  // namespace

TEST_CASE("parse a minimal job") {
  const auto job = parse_job(kMinimal);
  CHECK(job.d == 2);
  CHECK(job.p == 1);
  CHECK(job.a.empty());
  CHECK_FALSE(job.f.has_value());
  REQUIRE(job.e.size() == 1);
  CHECK(job.e[0] == std::vector<Term>{Term{ev({1, 0}), 0}, Term{ev({0, 1}), 0}});
  REQUIRE(job.tasks.size() == 1);
  CHECK(job.tasks[0].kind == "mixed");
  CHECK(*job.tasks[0].find("k") == "[1]");
  CHECK(job.tasks[0].line == 10);
  CHECK(job.setup().q() == 1);
}

TEST_CASE("parse errors carry the line") {
  const auto arity = parse_failure(job_text("E1 = [1,0,0]@1", ""));
  CHECK(arity.kind == ErrorKind::ArityError);
  CHECK(arity.what.rfind("line 6:", 0) == 0);

  const auto comp = parse_failure(job_text("E1 = [1,0]@2", ""));
  CHECK(comp.kind == ErrorKind::ArityError);

  const auto ref = parse_failure(job_text("E1 = [1,0]@1", "[task check-fc]\nsequence = [1,0]@1:I2\n"));
  CHECK(ref.kind == ErrorKind::UnknownReference);
  CHECK(ref.what.rfind("line 8:", 0) == 0);

  CHECK(parse_failure(job_text("E1 = [1,0]@1", "[task frobnicate]\n")).kind == ErrorKind::ParseError);
  CHECK(parse_failure(job_text("E1 = [1,0]@1", "[task mixed]\nbogus = 1\n")).kind ==
        ErrorKind::ParseError);
  CHECK(parse_failure("version = 2\n").kind == ErrorKind::ParseError);
  CHECK(parse_failure(job_text("E1 = [1,0@1", "")).kind == ErrorKind::ParseError);
  CHECK(parse_failure("version = 1\n[ring]\nd = 2\nd = 3\n").kind == ErrorKind::ParseError);
}

TEST_CASE("value syntax") {
  CHECK(parse_range("3") == std::pair{3, 3});
  CHECK(parse_range("1..4") == std::pair{1, 4});
  CHECK_THROWS_AS(parse_range("4..x"), Error);
  CHECK(parse_int_list("[1,2]") == std::vector<int>{1, 2});
  CHECK(parse_int_list("1,2") == std::vector<int>{1, 2});
  CHECK(format_term(parse_term("[2,0]@1", 2, 1), 2) == "[2,0]@1");
  CHECK(parse_source("G1", 1) == -1);
  CHECK(parse_source("J", 1) == 0);
  CHECK(parse_source("F", 1) == 0);
  CHECK(parse_source("I1", 1) == 1);
  CHECK(parse_source("E1", 1) == 1);
  CHECK_THROWS_AS(parse_source("I2", 1), Error);
  const auto c = parse_candidate("[1,0]@1:I1", 2, 1, 1);
  CHECK(format_candidate(c, 2, 1) == "[1,0]@1:I1");
}

TEST_CASE("echo round trip") {
  const auto job = parse_job(kMinimal);
  CHECK(parse_job(echo(job)) == job);
  std::ifstream in(source_path("jobs/bhattacharya.job"));
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto b = parse_job(text);
  CHECK(parse_job(echo(b)) == b);
  CHECK(echo(parse_job(echo(b))) == echo(b));
}

TEST_CASE("property: echo round trip over the corpus") {
  for (const auto& c : load_corpus()) {
    auto job = c.job();
    TaskSpec t;
    t.kind = "lengths";
    t.params = {{"n", "1..2"}, {"p", "0"}};
    job.tasks.push_back(t);
    job.output = {"csv", "out.csv"};
    CHECK_MESSAGE(parse_job(echo(job)) == job, c.text.name);
  }
}

TEST_CASE("lengths task") {
  const auto r = run_json(job_text("E1 = [1,0]@1 [0,1]@1", "[task lengths]\nn = 1..4\n"));
  CHECK(r.at("exit_code") == 0);
  const auto& cells = r.at("tasks").at(0).at("result").at("cells");
  std::vector<std::int64_t> values;
  for (const auto& c : cells) values.push_back(c.at("value").get<std::int64_t>());
  CHECK(values == std::vector<std::int64_t>{1, 3, 6, 10});
}

TEST_CASE("verify-teo1 task on a corpus case") {
  const auto corpus = load_corpus();
  const auto it = std::find_if(corpus.begin(), corpus.end(),
                               [](const CorpusCase& c) { return c.text.name == "bhattacharya"; });
  REQUIRE(it != corpus.end());
  auto job = it->job();
  TaskSpec t;
  t.kind = "verify-teo1";
  t.params = {{"j", "0"}, {"k0", "1"}, {"k", "[1]"}};
  job.tasks.push_back(t);
  const auto rep = run_job(job);
  REQUIRE(rep.tasks.size() == 1);
  CHECK(rep.tasks[0].status == "ok");
  CHECK(rep.tasks[0].result.at("verdict") == "confirmed");
  CHECK(rep.exit_code == 0);
}

TEST_CASE("exit codes") {
  const std::string modules = "E1 = [1,0]@1 [0,1]@1";
  CHECK(run_job(parse_job(job_text(modules, "[task mixed]\n"))).exit_code == 0);
  // a wrong total degree is a task error
  const auto bad = run_job(parse_job(job_text(modules, "[task mixed]\nj = 0\nk0 = 1\nk = [0]\n")));
  CHECK(bad.exit_code == 1);
  CHECK(bad.tasks[0].status == "error");
  CHECK(bad.tasks[0].error_kind == "DegreeMismatch");
  // failing checks are results, not errors
  const auto fails = run_job(parse_job(
      job_text("E1 = [1,1]@1 [0,2]@1", "[task check-fc]\nsequence = [0,2]@1:I1\nmode = weak\n")));
  CHECK(fails.exit_code == 0);
  CHECK(fails.tasks[0].result.at("verdict") == "fail");
  // a torsion module has no mixed multiplicities but still has e_BR
  const auto torsion = run_job(parse_job(
      "version = 1\n[ring]\nd = 2\np = 1\n[modules]\nA = [1,0]\nE1 = [1,0]@1\n[task mixed]\n[task br]\n"));
  CHECK(torsion.exit_code == 1);
  CHECK(torsion.tasks[0].error_kind == "TrivialModule");
  CHECK(torsion.tasks[1].status == "ok");
  // setup errors reach every task
  const auto open = run_job(parse_job(job_text("F = [1,0]@1\nE1 = [1,0]@1", "[task mixed]\n[task br]\n")));
  CHECK(open.exit_code == 1);
  for (const auto& t : open.tasks) CHECK(t.status == "error");
}

TEST_CASE("emit an empty report") {
  JobSpec job;
  job.d = 2;
  Report rep;
  rep.job = job;
  const auto j = Json::parse(emit(rep, Format::Json, false));
  CHECK(j.at("schema") == kReportSchema);
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("tasks").empty());
  CHECK(emit(rep, Format::Csv, false).empty());
  const auto human = emit(rep, Format::Human, false);
  CHECK(human.find("mixmult 1.0.0") == 0);
  CHECK(human.find("tasks     0") != std::string::npos);
}

TEST_CASE("emit one mixed result") {
  const auto r = run_json(std::string(kMinimal));
  const auto& res = r.at("tasks").at(0).at("result");
  REQUIRE(res.at("entries").size() == 1);
  const auto& e = res.at("entries").at(0);
  CHECK(e.at("value") == 1);
  CHECK(e.at("evidence").contains("base"));
  CHECK(e.at("evidence").at("window") == 3);
}

TEST_CASE("CSV rows match grid cardinality") {
  const auto rep = run_job(parse_job(job_text(
      "E1 = [2,0]@1 [0,3]@1", "[task lengths]\nn = 0..3\np = 0..1\nr1 = 1..2\n[task lengths]\nn = 2\n")));
  const auto csv = emit(rep, Format::Csv, false);
  std::istringstream is(csv);
  std::vector<std::vector<std::string>> tables(1);
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) {
      tables.emplace_back();
      continue;
    }
    tables.back().push_back(line);
  }
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].front() == "n,p,r1,value");
  CHECK(tables[0].size() == 1 + 4 * 2 * 2);
  CHECK(tables[1].size() == 1 + 1);
}

TEST_CASE("reports are deterministic without volatile fields") {
  const std::string text = job_text("E1 = [2,0]@1 [0,3]@1", "[task lengths]\nn = 1..3\n[task mixed]\n[task br]\n");
  RunOptions one;
  RunOptions many;
  many.task_threads = 3;
  many.policy.threads = 4;
  const auto a = emit(run_job(parse_job(text), one), Format::Json, false);
  const auto b = emit(run_job(parse_job(text), many), Format::Json, false);
  CHECK(a == b);
  CHECK(a.find("elapsed") == std::string::npos);
  CHECK(emit(run_job(parse_job(text), one), Format::Json, true).find("elapsed") != std::string::npos);
}

TEST_CASE("task kinds and keys") {
  for (const auto& kind : task_kinds()) CHECK_FALSE(task_keys(kind).empty());
  const auto& keys = task_keys("lengths");
  CHECK(std::find(keys.begin(), keys.end(), "n") != keys.end());
}

TEST_CASE("format names") {
  CHECK(format_from_string("json") == Format::Json);
  CHECK(format_from_string("csv") == Format::Csv);
  CHECK(format_from_string("human") == Format::Human);
  CHECK_FALSE(format_from_string("xml").has_value());
}

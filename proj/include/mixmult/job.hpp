#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixmult/graded.hpp"
#include "mixmult/sequences.hpp"

namespace mixmult {

inline constexpr int kJobFormatVersion = 1;

/// One [task <kind>] section.  Parameters keep their file order.
struct TaskSpec {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  /// Line of the section header; not part of equality.
  int line = 0;

  const std::string* find(const std::string& key) const;
  friend bool operator==(const TaskSpec& a, const TaskSpec& b) {
    return a.kind == b.kind && a.params == b.params;
  }
};

struct OutputSpec {
  std::string format;
  std::string path;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct JobSpec {
  int version = kJobFormatVersion;
  int d = 1;
  int p = 1;
  /// Generators of A in R.
  std::vector<ExpVec> a;
  /// Generators of F; absent means the maximal ideal times R^p.
  std::optional<std::vector<Term>> f;
  std::vector<std::vector<Term>> e;
  std::vector<TaskSpec> tasks;
  OutputSpec output;

  RingContext ctx() const { return RingContext::make(d, p); }
  std::vector<Term> f_terms() const;
  Setup setup() const;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Throws ParseError, ArityError or UnknownReference; messages start
/// with "line N:".
JobSpec parse_job(const std::string& text);

/// Canonical text of the job; parse_job(echo(j)) == j.
std::string echo(const JobSpec& job);

// Value syntax shared by the parser and the task runner.

/// "3" or "1..4".
std::pair<int, int> parse_range(const std::string& s);
int parse_int(const std::string& s);
/// "[1,2]" or "1,2".
std::vector<int> parse_int_list(const std::string& s);
/// "[2,0]@1"; component is one-based in the text, zero-based in Term.
Term parse_term(const std::string& s, int d, int p);
std::vector<Term> parse_terms(const std::string& s, int d, int p);
ExpVec parse_exponents(const std::string& s, int d);
/// "[1,0]@1:I1"; sources G1, J, I<i> or E<i>.
Candidate parse_candidate(const std::string& s, int d, int p, int q);
std::vector<Candidate> parse_candidates(const std::string& s, int d, int p, int q);
/// Source token to id: G1 -> -1, J or F -> 0, I<i> or E<i> -> i.
int parse_source(const std::string& s, int q);

std::string format_term(const Term& t, int d);
std::string format_exponents(const ExpVec& x, int d);
std::string format_candidate(const Candidate& c, int d, int p);
std::string format_source(int id);

/// Keys each task kind accepts.
const std::vector<std::string>& task_kinds();
const std::vector<std::string>& task_keys(const std::string& kind);

}  // namespace mixmult

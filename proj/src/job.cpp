#include "mixmult/job.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace mixmult {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool gap = false;
  for (char ch : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      gap = true;
      continue;
    }
    if (gap) out += ' ';
    gap = false;
    out += ch;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void parse_fail(const std::string& reason) {
  throw Error(ErrorKind::ParseError, reason);
}

// "r3" with prefix "r" -> 3; nullopt when the key has another shape.
std::optional<int> indexed_key(const std::string& key, const std::string& prefix) {
  if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) {
    return std::nullopt;
  }
  int v = 0;
  const char* first = key.data() + prefix.size();
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || v < 1 || *first == '0') return std::nullopt;
  return v;
}

const std::vector<std::string> kPolicyKeys = {"window", "rounds", "base", "kmax",
                                              "r_start", "r_end", "p_max"};

std::vector<std::string> with_policy(std::vector<std::string> keys) {
  keys.insert(keys.end(), kPolicyKeys.begin(), kPolicyKeys.end());
  return keys;
}

const std::map<std::string, std::vector<std::string>>& key_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"lengths", {"n", "p"}},
      {"mixed", with_policy({"j", "k0", "k"})},
      {"br", with_policy({"module", "j", "degree"})},
      {"check-fc", with_policy({"sequence", "mode", "condition", "family"})},
      {"check-superficial", with_policy({"sequence", "epsilon"})},
      {"check-jr", with_policy({"family"})},
      {"verify-teo1", with_policy({"j", "k0", "k", "sequence"})},
      {"verify-teo4", with_policy({"j", "k0", "k", "sequence"})},
      {"verify-mod1", with_policy({"j", "k0", "k", "sequence"})},
      {"verify-mod2", with_policy({"j", "k0", "k", "sequence"})},
      {"verify-generalized", with_policy({"j", "k0", "k", "ys", "xs"})},
      {"verify-cor-generalized", with_policy({"j", "k0", "k", "ys", "xs"})},
      {"verify-trung-verma", with_policy({"j", "k0", "k", "sequence"})},
      {"verify-mod3", with_policy({"j", "k", "sequence"})},
      {"oracle-regen", {"corpus", "out", "count", "seed"}},
  };
  return table;
}

bool key_allowed(const std::string& kind, const std::string& key) {
  const auto& keys = task_keys(kind);
  if (std::find(keys.begin(), keys.end(), key) != keys.end()) return true;
  if (kind == "lengths" && indexed_key(key, "r")) return true;
  if (kind == "check-jr" && indexed_key(key, "J")) return true;
  return false;
}

// Validates every reference a task makes to declared modules.
void validate_task(const JobSpec& job, const TaskSpec& t) {
  const int q = static_cast<int>(job.e.size());
  for (const auto& [key, value] : t.params) {
    if (!key_allowed(t.kind, key)) parse_fail("task " + t.kind + " has no key '" + key + "'");
    if (key == "sequence" || key == "ys" || key == "xs" || indexed_key(key, "J")) {
      if (t.kind == "check-jr" && indexed_key(key, "J") && *indexed_key(key, "J") > q) {
        throw Error(ErrorKind::UnknownReference, "no module E" + key.substr(1));
      }
      parse_candidates(value, job.d, job.p, q);
    } else if (key == "module") {
      parse_source(value, q);
      if (value == "G1") parse_fail("br needs F or E<i>");
    } else if (key == "family") {
      if (t.kind == "check-jr") {
        if (value != "auto") parse_fail("check-jr family must be 'auto'");
      } else {
        for (const auto& tok : tokens(value)) parse_source(tok, q);
      }
    } else if (key == "k") {
      const auto k = parse_int_list(value);
      if (static_cast<int>(k.size()) != q) {
        throw Error(ErrorKind::ArityError, "k has " + std::to_string(k.size()) +
                                               " entries, the job declares " +
                                               std::to_string(q) + " modules");
      }
    } else if (key == "mode") {
      if (value != "weak" && value != "fc") parse_fail("mode must be weak or fc");
    } else if (key == "condition") {
      if (value != "fc1" && value != "fc2" && value != "fc3" && value != "sequence") {
        parse_fail("condition must be fc1, fc2, fc3 or sequence");
      }
    } else if (key == "n" || key == "p" || indexed_key(key, "r")) {
      if (t.kind == "lengths" && indexed_key(key, "r") && *indexed_key(key, "r") > q) {
        throw Error(ErrorKind::UnknownReference, "no axis " + key);
      }
      const auto [lo, hi] = parse_range(value);
      if (lo < 0 || hi < lo) parse_fail("bad range '" + value + "'");
    } else if (key == "corpus" || key == "out") {
      if (value.empty()) parse_fail(key + " is empty");
    } else {
      parse_int(value);
    }
  }
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

std::string at_line(int line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

const std::string* TaskSpec::find(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<Term> JobSpec::f_terms() const {
  if (f) return *f;
  std::vector<Term> out;
  for (int c = 0; c < p; ++c) {
    for (int i = 0; i < d; ++i) out.push_back(Term{unit_vector(i), c});
  }
  return out;
}

Setup JobSpec::setup() const { return Setup::build(ctx(), a, f_terms(), e); }

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : key_table()) out.push_back(k);
    return out;
  }();
  return kinds;
}

const std::vector<std::string>& task_keys(const std::string& kind) {
  const auto& table = key_table();
  auto it = table.find(kind);
  if (it == table.end()) parse_fail("unknown task kind '" + kind + "'");
  return it->second;
}

int parse_int(const std::string& s) {
  const std::string t = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    parse_fail("expected an integer, got '" + t + "'");
  }
  return v;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(s);
    return {v, v};
  }
  return {parse_int(s.substr(0, dots)), parse_int(s.substr(dots + 2))};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') parse_fail("unbalanced bracket in '" + t + "'");
    t = t.substr(1, t.size() - 2);
  }
  std::vector<int> out;
  if (trim(t).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = t.find(',', start);
    out.push_back(parse_int(t.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ExpVec parse_exponents(const std::string& s, int d) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    parse_fail("expected an exponent list like [1,0], got '" + t + "'");
  }
  const auto v = parse_int_list(t);
  if (static_cast<int>(v.size()) != d) {
    throw Error(ErrorKind::ArityError, "exponent list " + t + " has " + std::to_string(v.size()) +
                                           " entries, the ring has d = " + std::to_string(d));
  }
  ExpVec x{};
  for (int i = 0; i < d; ++i) {
    if (v[static_cast<std::size_t>(i)] < 0 || v[static_cast<std::size_t>(i)] > kMaxExponent) {
      parse_fail("exponent out of range in " + t);
    }
    x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  }
  return x;
}

Term parse_term(const std::string& s, int d, int p) {
  const std::string t = trim(s);
  const auto at = t.find('@');
  if (at == std::string::npos) parse_fail("term '" + t + "' lacks a component (@c)");
  Term term;
  term.x = parse_exponents(t.substr(0, at), d);
  const int c = parse_int(t.substr(at + 1));
  if (c < 1 || c > p) {
    throw Error(ErrorKind::ArityError, "component " + std::to_string(c) + " of " + t +
                                           " outside 1.." + std::to_string(p));
  }
  term.component = c - 1;
  return term;
}

std::vector<Term> parse_terms(const std::string& s, int d, int p) {
  std::vector<Term> out;
  for (const auto& tok : tokens(s)) out.push_back(parse_term(tok, d, p));
  return out;
}

int parse_source(const std::string& s, int q) {
  const std::string t = trim(s);
  if (t == "G1") return -1;
  if (t == "J" || t == "F") return 0;
  auto i = indexed_key(t, "I");
  if (!i) i = indexed_key(t, "E");
  if (!i) parse_fail("unknown source '" + t + "'");
  if (*i > q) throw Error(ErrorKind::UnknownReference, "no module E" + std::to_string(*i));
  return *i;
}

Candidate parse_candidate(const std::string& s, int d, int p, int q) {
  const std::string t = trim(s);
  const auto colon = t.find(':');
  if (colon == std::string::npos) parse_fail("candidate '" + t + "' lacks a source (:I1)");
  const Term term = parse_term(t.substr(0, colon), d, p);
  return Candidate{mixmult::term(term.x, term.component), parse_source(t.substr(colon + 1), q)};
}

std::vector<Candidate> parse_candidates(const std::string& s, int d, int p, int q) {
  std::vector<Candidate> out;
  for (const auto& tok : tokens(s)) out.push_back(parse_candidate(tok, d, p, q));
  return out;
}

std::string format_exponents(const ExpVec& x, int d) {
  std::string s = "[";
  for (int i = 0; i < d; ++i) {
    if (i) s += ',';
    s += std::to_string(x[static_cast<std::size_t>(i)]);
  }
  return s + "]";
}

std::string format_term(const Term& t, int d) {
  return format_exponents(t.x, d) + "@" + std::to_string(t.component + 1);
}

std::string format_source(int id) {
  if (id == -1) return "G1";
  if (id == 0) return "J";
  return "I" + std::to_string(id);
}

std::string format_candidate(const Candidate& c, int d, int p) {
  int comp = 0;
  for (int j = 0; j < p; ++j) {
    if (c.element.t[static_cast<std::size_t>(j)] != 0) comp = j;
  }
  return format_term(Term{c.element.x, comp}, d) + ":" + format_source(c.source);
}

JobSpec parse_job(const std::string& text) {
  JobSpec job;
  std::vector<Entry> top;
  std::vector<Entry> ring;
  std::vector<Entry> modules;
  std::vector<Entry> output;
  std::vector<std::pair<TaskSpec, std::vector<Entry>>> tasks;
  std::vector<Entry>* current = &top;
  std::set<std::string> seen_sections;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw Error(ErrorKind::ParseError, at_line(line, "unterminated section header"));
      const auto words = tokens(l.substr(1, l.size() - 2));
      if (words.empty()) throw Error(ErrorKind::ParseError, at_line(line, "empty section header"));
      if (words[0] == "task") {
        if (words.size() != 2) {
          throw Error(ErrorKind::ParseError, at_line(line, "expected [task <kind>]"));
        }
        if (!key_table().count(words[1])) {
          throw Error(ErrorKind::ParseError, at_line(line, "unknown task kind '" + words[1] + "'"));
        }
        TaskSpec t;
        t.kind = words[1];
        t.line = line;
        tasks.emplace_back(std::move(t), std::vector<Entry>{});
        current = &tasks.back().second;
        continue;
      }
      if (words.size() != 1) throw Error(ErrorKind::ParseError, at_line(line, "bad section header"));
      if (!seen_sections.insert(words[0]).second) {
        throw Error(ErrorKind::ParseError, at_line(line, "duplicate section [" + words[0] + "]"));
      }
      if (words[0] == "ring") {
        current = &ring;
      } else if (words[0] == "modules") {
        current = &modules;
      } else if (words[0] == "output") {
        current = &output;
      } else {
        throw Error(ErrorKind::ParseError, at_line(line, "unknown section [" + words[0] + "]"));
      }
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, at_line(line, "expected key = value"));
    Entry entry{trim(l.substr(0, eq)), collapse_spaces(l.substr(eq + 1)), line};
    if (entry.key.empty()) throw Error(ErrorKind::ParseError, at_line(line, "empty key"));
    for (const auto& other : *current) {
      if (other.key == entry.key) {
        throw Error(ErrorKind::ParseError, at_line(line, "duplicate key '" + entry.key + "'"));
      }
    }
    current->push_back(std::move(entry));
  }

  auto located = [](int at, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(e.kind(), at_line(at, e.what()));
    }
  };

  bool have_version = false;
  for (const auto& en : top) {
    located(en.line, [&] {
      if (en.key != "version") parse_fail("unknown top-level key '" + en.key + "'");
      job.version = parse_int(en.value);
      if (job.version != kJobFormatVersion) {
        parse_fail("unsupported job format version " + en.value);
      }
      have_version = true;
    });
  }
  if (!have_version) throw Error(ErrorKind::ParseError, at_line(1, "missing 'version = 1'"));

  bool have_d = false;
  bool have_p = false;
  for (const auto& en : ring) {
    located(en.line, [&] {
      if (en.key == "d") {
        job.d = parse_int(en.value);
        have_d = true;
      } else if (en.key == "p") {
        job.p = parse_int(en.value);
        have_p = true;
      } else {
        parse_fail("unknown ring key '" + en.key + "'");
      }
      if (job.d < 1 || job.p < 1 || job.d > kMaxVars || job.p > kMaxVars) {
        parse_fail("ring needs 1 <= d, p <= " + std::to_string(kMaxVars));
      }
      if (job.d + job.p > kMaxVars) {
        parse_fail("d + p exceeds " + std::to_string(kMaxVars));
      }
    });
  }
  if (!have_d || !have_p) {
    throw Error(ErrorKind::ParseError, at_line(line, "[ring] must set d and p"));
  }

  std::map<int, Entry> e_entries;
  for (const auto& en : modules) {
    located(en.line, [&] {
      if (en.key == "A") {
        for (const auto& tok : tokens(en.value)) job.a.push_back(parse_exponents(tok, job.d));
      } else if (en.key == "F") {
        job.f = parse_terms(en.value, job.d, job.p);
        if (job.f->empty()) parse_fail("F has no generators");
      } else if (auto i = indexed_key(en.key, "E")) {
        e_entries.emplace(*i, en);
      } else {
        parse_fail("unknown module '" + en.key + "'");
      }
    });
  }
  int expect = 1;
  for (const auto& [i, en] : e_entries) {
    located(en.line, [&] {
      if (i != expect) parse_fail("modules must be E1..Eq without gaps; E" + std::to_string(expect) + " missing");
      auto terms = parse_terms(en.value, job.d, job.p);
      if (terms.empty()) parse_fail(en.key + " has no generators");
      job.e.push_back(std::move(terms));
    });
    ++expect;
  }

  for (const auto& en : output) {
    located(en.line, [&] {
      if (en.key == "format") {
        if (en.value != "human" && en.value != "json" && en.value != "csv") {
          parse_fail("format must be human, json or csv");
        }
        job.output.format = en.value;
      } else if (en.key == "path") {
        job.output.path = en.value;
      } else {
        parse_fail("unknown output key '" + en.key + "'");
      }
    });
  }

  for (auto& [task, entries] : tasks) {
    for (const auto& en : entries) task.params.emplace_back(en.key, en.value);
    for (const auto& en : entries) {
      TaskSpec one{task.kind, {{en.key, en.value}}, task.line};
      located(en.line, [&] { validate_task(job, one); });
    }
    job.tasks.push_back(std::move(task));
  }
  return job;
}

std::string echo(const JobSpec& job) {
  std::ostringstream os;
  os << "version = " << job.version << "\n\n[ring]\nd = " << job.d << "\np = " << job.p
     << "\n\n[modules]\nA =";
  for (const auto& x : job.a) os << ' ' << format_exponents(x, job.d);
  os << '\n';
  if (job.f) {
    os << "F =";
    for (const auto& t : *job.f) os << ' ' << format_term(t, job.d);
    os << '\n';
  }
  for (std::size_t i = 0; i < job.e.size(); ++i) {
    os << 'E' << i + 1 << " =";
    for (const auto& t : job.e[i]) os << ' ' << format_term(t, job.d);
    os << '\n';
  }
  if (!job.output.format.empty() || !job.output.path.empty()) {
    os << "\n[output]\n";
    if (!job.output.format.empty()) os << "format = " << job.output.format << '\n';
    if (!job.output.path.empty()) os << "path = " << job.output.path << '\n';
  }
  for (const auto& t : job.tasks) {
    os << "\n[task " << t.kind << "]\n";
    for (const auto& [k, v] : t.params) {
      os << k << " =";
      if (!v.empty()) os << ' ' << v;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace mixmult

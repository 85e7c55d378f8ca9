#include "mixmult/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

namespace mixmult {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json window_json(const Window& w) {
  return Json{{"r_start", w.r_start}, {"r_end", w.r_end}, {"p_max", w.p_max}};
}

Json evidence_json(const Evidence& e) {
  return Json{{"base", e.base}, {"window", e.window}, {"round", e.round},
              {"samples", e.samples}};
}

Json index_json(const MultiIndex& idx) {
  return Json{{"j", idx.j}, {"k0", idx.k0}, {"k", idx.k}};
}

Json candidates_json(const std::vector<Candidate>& cs, const RingContext& ctx) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(format_candidate(c, ctx.d, ctx.rank));
  return out;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// ------------------------------------------------------------ task runner

struct TaskContext {
  const JobSpec& job;
  const Setup* setup;
  const std::string* setup_error;
  ErrorKind setup_error_kind;
  const RunOptions& opts;
  CellStore* store;
};

int int_param(const TaskSpec& t, const std::string& key, int fallback) {
  const auto* v = t.find(key);
  return v ? parse_int(*v) : fallback;
}

StabilizationPolicy task_policy(const TaskContext& c, const TaskSpec& t) {
  StabilizationPolicy p = c.opts.policy;
  p.store = c.store;
  p.window = int_param(t, "window", p.window);
  p.rounds = int_param(t, "rounds", p.rounds);
  p.kmax = int_param(t, "kmax", p.kmax);
  if (t.find("base")) {
    p.base.clear();
    p.uniform_base = parse_int(*t.find("base"));
  }
  return p;
}

std::optional<Window> task_window(const Setup& setup, const TaskSpec& t,
                                  const std::optional<Window>& global) {
  if (!t.find("r_start") && !t.find("r_end") && !t.find("p_max")) return global;
  Window w = global ? *global : default_window(setup);
  const int span = w.r_end - w.r_start;
  w.r_start = int_param(t, "r_start", w.r_start);
  w.r_end = int_param(t, "r_end", t.find("r_start") ? w.r_start + span : w.r_end);
  w.p_max = int_param(t, "p_max", w.p_max);
  if (w.r_start < 0 || w.r_end < w.r_start || w.p_max < 0) {
    throw Error(ErrorKind::InvalidArgument, "bad window override");
  }
  return w;
}

MultiIndex task_index(const TaskSpec& t, int q) {
  MultiIndex idx;
  idx.j = int_param(t, "j", 0);
  idx.k0 = int_param(t, "k0", 0);
  idx.k = t.find("k") ? parse_int_list(*t.find("k")) : std::vector<int>(static_cast<std::size_t>(q), 0);
  if (static_cast<int>(idx.k.size()) != q) throw Error(ErrorKind::ArityError, "k has wrong length");
  if (idx.j < 0 || idx.k0 < 0 || std::any_of(idx.k.begin(), idx.k.end(), [](int v) { return v < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "negative index entry");
  }
  return idx;
}

std::vector<Candidate> task_candidates(const JobSpec& job, const Setup& setup,
                                       const std::string& text) {
  auto cs = parse_candidates(text, job.d, job.p, static_cast<int>(job.e.size()));
  for (const auto& c : cs) {
    if (auto problem = candidate_problem(setup, c)) {
      throw Error(ErrorKind::InvalidArgument,
                  format_candidate(c, job.d, job.p) + ": " + *problem);
    }
  }
  return cs;
}

const std::string& required(const TaskSpec& t, const std::string& key) {
  const auto* v = t.find(key);
  if (!v) throw Error(ErrorKind::InvalidArgument, "task " + t.kind + " needs '" + key + "'");
  return *v;
}

Json run_lengths(const TaskContext& c, const TaskSpec& t, TaskResult& out) {
  const Setup& setup = *c.setup;
  MixedLengthFunction f(setup);
  f.set_store(c.store);
  f.set_kmax(task_policy(c, t).kmax);
  GridSpec grid;
  grid.ranges.push_back(parse_range(required(t, "n")));
  grid.ranges.push_back(t.find("p") ? parse_range(*t.find("p")) : std::pair{0, 0});
  for (int i = 1; i <= setup.q(); ++i) {
    const auto* v = t.find("r" + std::to_string(i));
    grid.ranges.push_back(v ? parse_range(*v) : std::pair{0, 0});
  }
  out.tables.push_back(fill_table(f, grid, c.opts.policy.threads));
  return to_json(out.tables.back());
}

Json run_mixed(const TaskContext& c, const TaskSpec& t, TaskResult& out) {
  const Setup& setup = *c.setup;
  const auto policy = task_policy(c, t);
  setup.require_nondegenerate();
  MixedLengthFunction f(setup);
  f.set_store(c.store);
  f.set_kmax(policy.kmax);
  if (!t.find("j") && !t.find("k0") && !t.find("k")) {
    auto rep = mixed_multiplicities(f, policy);
    out.warnings.insert(out.warnings.end(), rep.warnings.begin(), rep.warnings.end());
    return to_json(rep);
  }
  const auto idx = task_index(t, setup.q());
  MultiplicityReport rep;
  rep.d_formula = dimension_D(setup);
  rep.d_detected = detect_degree(f, rep.d_formula, policy).degree;
  if (rep.d_detected != rep.d_formula) {
    rep.warnings.push_back("detected degree " + std::to_string(rep.d_detected) +
                           " differs from the dimension formula " +
                           std::to_string(rep.d_formula));
  }
  rep.entries.push_back(mixed_multiplicity(f, idx, rep.d_detected, policy));
  out.warnings.insert(out.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  return to_json(rep);
}

Json run_br(const TaskContext& c, const TaskSpec& t, TaskResult& out) {
  const Setup& setup = *c.setup;
  const auto policy = task_policy(c, t);
  const std::string module = t.find("module") ? *t.find("module") : "F";
  const int id = parse_source(module, setup.q());
  BuchsbaumRimFunction f(setup.relations(), {setup.source(id)});
  f.set_store(c.store);
  f.set_kmax(policy.kmax);
  std::optional<int> degree;
  if (t.find("degree")) degree = parse_int(*t.find("degree"));
  Json entries = Json::array();
  auto add = [&](const BuchsbaumRimResult& r) {
    entries.push_back(Json{{"j", r.j}, {"value", r.value}, {"evidence", evidence_json(r.evidence)}});
    out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
  };
  int deg = 0;
  if (t.find("j")) {
    auto r = buchsbaum_rim(f, parse_int(*t.find("j")), policy, degree);
    deg = r.degree;
    add(r);
  } else {
    auto first = buchsbaum_rim(f, 0, policy, degree);
    deg = first.degree;
    add(first);
    for (int j = 1; j <= deg; ++j) add(buchsbaum_rim(f, j, policy, deg));
  }
  return Json{{"module", id == 0 ? std::string("F") : "E" + std::to_string(id)},
              {"degree", deg},
              {"entries", entries}};
}

Json run_check_fc(const TaskContext& c, const TaskSpec& t, TaskResult&) {
  const Setup& setup = *c.setup;
  const auto cs = task_candidates(c.job, setup, required(t, "sequence"));
  if (cs.empty()) throw Error(ErrorKind::InvalidArgument, "empty sequence");
  const Window w = task_window(setup, t, std::nullopt).value_or(default_window(setup));
  const std::string cond = t.find("condition") ? *t.find("condition") : "sequence";
  std::vector<int> family = default_family(setup);
  if (t.find("family")) {
    family.clear();
    std::istringstream is(*t.find("family"));
    for (std::string tok; is >> tok;) family.push_back(parse_source(tok, setup.q()));
  }
  if (cond != "sequence" && cs.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, cond + " takes a single candidate");
  }
  CheckReport r;
  if (cond == "fc1") {
    r = check_fc1(setup, cs[0], w, family);
  } else if (cond == "fc2") {
    r = check_fc2(setup, cs[0]);
  } else if (cond == "fc3") {
    r = check_fc3(setup, cs[0]);
  } else {
    const auto* mode = t.find("mode");
    r = check_sequence(setup, cs, (mode && *mode == "fc") ? SequenceMode::FC : SequenceMode::WeakFC,
                       w, family);
  }
  return to_json(r, setup.ctx());
}

Json run_check_superficial(const TaskContext& c, const TaskSpec& t, TaskResult&) {
  const Setup& setup = *c.setup;
  const auto cs = task_candidates(c.job, setup, required(t, "sequence"));
  if (cs.empty()) throw Error(ErrorKind::InvalidArgument, "empty sequence");
  const Window w = task_window(setup, t, std::nullopt).value_or(default_window(setup));
  if (cs.size() == 1) {
    return to_json(check_superficial(setup, cs[0], int_param(t, "epsilon", 0), w), setup.ctx());
  }
  return to_json(check_superficial_sequence(setup, cs, w), setup.ctx());
}

Json run_check_jr(const TaskContext& c, const TaskSpec& t, TaskResult&) {
  const Setup& setup = *c.setup;
  const Window w = task_window(setup, t, std::nullopt).value_or(default_window(setup));
  std::vector<std::vector<Candidate>> parts(static_cast<std::size_t>(setup.q()));
  Json extra = Json::object();
  if (t.find("family")) {
    const auto fam = assemble_maximal_family(setup, w);
    parts = fam.parts;
    extra["assembled"] = candidates_json(fam.sequence, setup.ctx());
    extra["ended_by_torsion"] = fam.ended_by_torsion;
  }
  for (int i = 1; i <= setup.q(); ++i) {
    if (const auto* v = t.find("J" + std::to_string(i))) {
      parts[static_cast<std::size_t>(i - 1)] = task_candidates(c.job, setup, *v);
    }
  }
  Json j = to_json(check_joint_reduction(setup, parts, w), setup.ctx());
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

Json run_verify(const TaskContext& c, const TaskSpec& t, TaskResult& out) {
  const std::string name = t.kind.substr(std::string("verify-").size());
  const auto theorem = theorem_from_string(name);
  if (!theorem) throw Error(ErrorKind::InvalidArgument, "unknown theorem " + name);
  const Setup& setup = *c.setup;
  HarnessOptions opt;
  opt.policy = task_policy(c, t);
  opt.window = task_window(setup, t, std::nullopt);
  VerificationCase vc;
  switch (*theorem) {
    case Theorem::Teo1:
    case Theorem::Mod1:
    case Theorem::Teo4:
    case Theorem::Mod2: {
      std::optional<std::vector<Candidate>> cs;
      if (t.find("sequence")) cs = task_candidates(c.job, setup, *t.find("sequence"));
      const auto idx = task_index(t, setup.q());
      const bool four = *theorem == Theorem::Teo4 || *theorem == Theorem::Mod2;
      vc = four ? verify_teo4(setup, cs, idx, opt) : verify_teo1(setup, cs, idx, opt);
      break;
    }
    case Theorem::Generalized:
    case Theorem::CorGeneralized:
      vc = verify_generalized(setup, task_candidates(c.job, setup, required(t, "ys")),
                              task_candidates(c.job, setup, required(t, "xs")),
                              task_index(t, setup.q()), opt);
      break;
    case Theorem::TrungVerma:
      vc = verify_trung_verma(setup, task_candidates(c.job, setup, required(t, "sequence")),
                              task_index(t, setup.q()), opt);
      break;
    case Theorem::Mod3: {
      if (!c.job.a.empty()) out.warnings.push_back("mod3 works over N = R; A is ignored");
      std::vector<MonomialModule> e;
      const auto ctx = c.job.ctx();
      for (const auto& terms : c.job.e) e.push_back(slice_from_terms(ctx, terms));
      auto cs = parse_candidates(required(t, "sequence"), c.job.d, c.job.p,
                                 static_cast<int>(c.job.e.size()));
      const auto k = t.find("k") ? parse_int_list(*t.find("k"))
                                 : std::vector<int>(c.job.e.size(), 0);
      vc = verify_mod3(ctx, e, cs, int_param(t, "j", 0), k, opt);
      break;
    }
  }
  vc.target = *theorem;
  if (vc.verdict == CaseVerdict::Refuted) out.status = "refuted";
  out.warnings.insert(out.warnings.end(), vc.warnings.begin(), vc.warnings.end());
  return to_json(vc, setup.ctx());
}

TaskResult run_task(const TaskContext& c, const TaskSpec& t) {
  TaskResult out;
  out.kind = t.kind;
  out.line = t.line;
  const auto t0 = Clock::now();
  try {
    auto handler = c.opts.handlers.find(t.kind);
    if (handler != c.opts.handlers.end()) {
      out.result = handler->second(c.job, t);
    } else if (t.kind == "oracle-regen") {
      throw Error(ErrorKind::InvalidArgument, "oracle-regen is only available in the mmult tool");
    } else {
      if (!c.setup) throw Error(c.setup_error_kind, *c.setup_error);
      if (t.kind == "lengths") {
        out.result = run_lengths(c, t, out);
      } else if (t.kind == "mixed") {
        out.result = run_mixed(c, t, out);
      } else if (t.kind == "br") {
        out.result = run_br(c, t, out);
      } else if (t.kind == "check-fc") {
        out.result = run_check_fc(c, t, out);
      } else if (t.kind == "check-superficial") {
        out.result = run_check_superficial(c, t, out);
      } else if (t.kind == "check-jr") {
        out.result = run_check_jr(c, t, out);
      } else if (t.kind.rfind("verify-", 0) == 0) {
        out.result = run_verify(c, t, out);
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown task kind " + t.kind);
      }
    }
  } catch (const Error& e) {
    out.status = "error";
    out.error_kind = to_string(e.kind());
    out.error = e.what();
    out.result = Json::object();
    out.tables.clear();
  } catch (const std::exception& e) {
    out.status = "error";
    out.error_kind = "Internal";
    out.error = e.what();
    out.result = Json::object();
    out.tables.clear();
  }
  out.elapsed_ms = ms_since(t0);
  return out;
}

// ------------------------------------------------------------ human text

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
}

bool blank(const Json& v) {
  return v.is_null() || (v.is_string() && v.get<std::string>().empty()) ||
         (v.is_structured() && v.empty());
}

void render(std::ostream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, e] : v.items()) {
      if (!blank(e)) width = std::max(width, k.size());
    }
    for (const auto& [k, e] : v.items()) {
      if (blank(e)) continue;
      if (is_flat(e)) {
        os << pad << std::left << std::setw(static_cast<int>(width)) << k << "  "
           << (e.is_array() ? e.dump() : scalar_text(e)) << '\n';
      } else {
        os << pad << k << '\n';
        render(os, e, indent + 2);
      }
    }
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const auto& e : v) {
      if (e.is_structured() && !is_flat(e)) {
        os << pad << "- [" << i << "]\n";
        render(os, e, indent + 4);
      } else {
        os << pad << "- " << (e.is_array() ? e.dump() : scalar_text(e)) << '\n';
      }
      ++i;
    }
  } else {
    os << pad << scalar_text(v) << '\n';
  }
}

void render_table(std::ostream& os, const LengthTable& t, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::vector<std::string> header = t.axis_names;
  header.push_back("value");
  std::vector<std::vector<std::string>> rows;
  for (const auto& [pt, v] : t.cells) {
    std::vector<std::string> row;
    for (int x : pt) row.push_back(std::to_string(x));
    row.push_back(std::to_string(v));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = header[i].size();
    for (const auto& r : rows) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    os << pad;
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "  " : "") << std::right << std::setw(static_cast<int>(width[i])) << r[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Json job_json(const JobSpec& job) {
  Json modules = Json::object();
  Json a = Json::array();
  for (const auto& x : job.a) a.push_back(format_exponents(x, job.d));
  modules["A"] = a;
  auto terms = [&](const std::vector<Term>& ts) {
    Json arr = Json::array();
    for (const auto& t : ts) arr.push_back(format_term(t, job.d));
    return arr;
  };
  modules["F"] = terms(job.f_terms());
  for (std::size_t i = 0; i < job.e.size(); ++i) modules["E" + std::to_string(i + 1)] = terms(job.e[i]);
  Json tasks = Json::array();
  for (const auto& t : job.tasks) {
    Json params = Json::object();
    for (const auto& [k, v] : t.params) params[k] = v;
    tasks.push_back(Json{{"kind", t.kind}, {"params", params}});
  }
  return Json{{"version", job.version},
              {"ring", Json{{"d", job.d}, {"p", job.p}}},
              {"modules", modules},
              {"tasks", tasks},
              {"text", echo(job)}};
}

Json volatile_json(const Report& r) {
  Json tasks = Json::array();
  for (const auto& t : r.tasks) tasks.push_back(t.elapsed_ms);
  return Json{{"elapsed_ms", r.elapsed_ms},
              {"task_elapsed_ms", tasks},
              {"cells_from_cache", r.cells_from_cache},
              {"cells_computed", r.cells_computed},
              {"cache", Json{{"loaded", r.cache.loaded},
                             {"corrupt", r.cache.corrupt},
                             {"hits", r.cache.hits},
                             {"misses", r.cache.misses},
                             {"appended", r.cache.appended},
                             {"audited", r.cache.audited},
                             {"mismatches", r.cache.mismatches}}}};
}

}  // namespace

// ------------------------------------------------------------ structured forms

Json to_json(const CheckReport& r, const RingContext& ctx) {
  Json j{{"condition", to_string(r.condition)},
         {"verdict", to_string(r.verdict)},
         {"window", window_json(r.window)}};
  if (r.witness) {
    j["witness"] = Json{{"point", r.witness->point},
                        {"monomial", to_string(r.witness->monomial, ctx)},
                        {"detail", r.witness->detail}};
  } else {
    j["witness"] = nullptr;
  }
  j["note"] = r.note;
  j["failed_step"] = r.failed_step;
  j["dims"] = r.dims;
  j["fc3"] = r.fc3;
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s, ctx));
  j["steps"] = steps;
  return j;
}

Json to_json(const VerificationCase& vc, const RingContext& ctx) {
  Json checks = Json::array();
  for (const auto& c : vc.checks) checks.push_back(to_json(c, ctx));
  return Json{{"theorem", to_string(vc.target)},
              {"index", index_json(vc.index)},
              {"sequence", candidates_json(vc.sequence, ctx)},
              {"ys", candidates_json(vc.ys, ctx)},
              {"checks", checks},
              {"lhs", optional_json(vc.lhs)},
              {"rhs", optional_json(vc.rhs)},
              {"rhs_saturated", optional_json(vc.rhs_saturated)},
              {"height", optional_json(vc.height)},
              {"verdict", to_string(vc.verdict)},
              {"note", vc.note},
              {"warnings", vc.warnings}};
}

Json to_json(const MultiplicityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"index", index_json(e.index)},
                           {"value", e.value},
                           {"evidence", evidence_json(e.evidence)}});
  }
  return Json{{"d_formula", r.d_formula},
              {"d_detected", r.d_detected},
              {"entries", entries},
              {"warnings", r.warnings}};
}

Json to_json(const LengthTable& t) {
  Json ranges = Json::array();
  for (const auto& [lo, hi] : t.grid.ranges) ranges.push_back(Json::array({lo, hi}));
  Json cells = Json::array();
  for (const auto& [pt, v] : t.cells) cells.push_back(Json{{"point", pt}, {"value", v}});
  return Json{{"axes", t.axis_names},
              {"ranges", ranges},
              {"cardinality", t.grid.cardinality()},
              {"cells", cells}};
}

Report run_job(const JobSpec& job, const RunOptions& opts) {
  const auto t0 = Clock::now();
  Report report;
  report.job = job;

  FileCache local;
  FileCache* cache = opts.cache ? opts.cache : &local;

  std::optional<Setup> setup;
  std::string setup_error;
  ErrorKind setup_error_kind = ErrorKind::InvalidArgument;
  try {
    setup = job.setup();
  } catch (const Error& e) {
    setup_error = std::string("setup: ") + e.what();
    setup_error_kind = e.kind();
  }

  TaskContext ctx{job, setup ? &*setup : nullptr, &setup_error, setup_error_kind, opts, cache};
  report.tasks.resize(job.tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= job.tasks.size()) return;
      report.tasks[i] = run_task(ctx, job.tasks[i]);
    }
  };
  const auto workers = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(opts.task_threads, 1)), job.tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  cache->flush();

  for (const auto& t : report.tasks) {
    if (t.status != "ok") report.exit_code = 1;
    for (const auto& tab : t.tables) {
      for (bool b : tab.cached) (b ? report.cells_from_cache : report.cells_computed) += 1;
    }
  }
  report.warnings = cache->warnings();
  report.cache = cache->stats();
  report.elapsed_ms = ms_since(t0);
  return report;
}

std::optional<Format> format_from_string(const std::string& s) {
  if (s == "human") return Format::Human;
  if (s == "json" || s == "structured") return Format::Json;
  if (s == "csv" || s == "csv-tables") return Format::Csv;
  return std::nullopt;
}

std::string emit(const Report& report, Format format, bool include_volatile) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      Json tasks = Json::array();
      for (std::size_t i = 0; i < report.tasks.size(); ++i) {
        const auto& t = report.tasks[i];
        Json err = nullptr;
        if (t.status == "error") err = Json{{"kind", t.error_kind}, {"message", t.error}};
        tasks.push_back(Json{{"task", i + 1},
                             {"kind", t.kind},
                             {"line", t.line},
                             {"status", t.status},
                             {"error", err},
                             {"result", t.result},
                             {"warnings", t.warnings}});
      }
      Json j{{"schema", kReportSchema},
             {"tool_version", report.tool_version},
             {"job", job_json(report.job)},
             {"tasks", tasks},
             {"warnings", report.warnings},
             {"exit_code", report.exit_code}};
      if (include_volatile) j["volatile"] = volatile_json(report);
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Human: {
      os << "mixmult " << report.tool_version << "  (" << kReportSchema << ")\n";
      os << "ring      d=" << report.job.d << " p=" << report.job.p
         << " q=" << report.job.e.size() << '\n';
      os << "tasks     " << report.tasks.size() << '\n';
      os << "exit code " << report.exit_code << '\n';
      for (const auto& w : report.warnings) os << "warning   " << w << '\n';
      for (std::size_t i = 0; i < report.tasks.size(); ++i) {
        const auto& t = report.tasks[i];
        os << "\n[" << i + 1 << "] " << t.kind << "  line " << t.line << "  " << t.status << '\n';
        if (t.status == "error") {
          os << "  error  " << t.error_kind << ": " << t.error << '\n';
          continue;
        }
        for (const auto& w : t.warnings) os << "  warning  " << w << '\n';
        if (!t.tables.empty()) {
          for (const auto& tab : t.tables) render_table(os, tab, 2);
        } else {
          render(os, t.result, 2);
        }
      }
      if (include_volatile) {
        os << "\ntiming\n";
        render(os, volatile_json(report), 2);
      }
      break;
    }
    case Format::Csv: {
      bool first = true;
      for (const auto& t : report.tasks) {
        for (const auto& tab : t.tables) {
          if (!first) os << '\n';
          first = false;
          for (const auto& name : tab.axis_names) os << name << ',';
          os << "value\n";
          for (const auto& [pt, v] : tab.cells) {
            for (int x : pt) os << x << ',';
            os << v << '\n';
          }
        }
      }
      break;
    }
  }
  return os.str();
}

}  // namespace mixmult

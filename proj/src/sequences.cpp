#include "mixmult/sequences.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mixmult/multiplicity.hpp"

namespace mixmult {

namespace {

// Powers of a list of source modules modulo B, shared by the windowed checks.
class Powers {
 public:
  Powers(const Setup& setup, const std::vector<int>& ids)
      : rel_(std::make_shared<const Relations>(setup.relations())),
        cache_(maps(setup, ids), rel_) {}

  std::shared_ptr<const SliceMap> operator()(const std::vector<int>& r) const {
    return cache_.power(r);
  }
  XIdeal b(const ExpVec& tau) const { return rel_->at(tau); }

 private:
  static std::vector<SliceMap> maps(const Setup& setup, const std::vector<int>& ids) {
    std::vector<SliceMap> out;
    for (int id : ids) out.push_back(SliceMap::from_module(setup.source(id)));
    return out;
  }
  std::shared_ptr<const Relations> rel_;
  PowerCache cache_;
};

// y * S at tau, where S is a slice and y = x^b T_c.
XIdeal times_element(const SliceMap& s, const ExpVec& tau, const BiMonomial& y) {
  if (!leq(y.t, tau)) return XIdeal{};
  ExpVec rest{};
  for (int i = 0; i < kMaxVars; ++i) rest[i] = tau[i] - y.t[i];
  return s.lifted(rest).shifted(y.x);
}

int component_of(const BiMonomial& m) {
  for (int i = 0; i < kMaxVars; ++i) {
    if (m.t[i] != 0) return i;
  }
  return -1;
}

std::vector<GridPoint> box(const std::vector<std::pair<int, int>>& ranges) {
  return GridSpec{ranges}.points();
}

int total(const std::vector<int>& r) { return std::accumulate(r.begin(), r.end(), 0); }

GridPoint with_p(const std::vector<int>& r, int p) {
  GridPoint g = r;
  g.push_back(p);
  return g;
}

int sat_dim(const Setup& s) {
  auto sat = s.saturated_relations();
  return sat.is_unit() ? -1 : proj_dim(sat);
}

void require_valid(const Setup& setup, const Candidate& c) {
  if (auto why = candidate_problem(setup, c)) throw Error(ErrorKind::InvalidArgument, *why);
}

std::vector<BiMonomial> lex_generators(const MonomialModule& m) {
  auto gens = m.gens();
  std::sort(gens.begin(), gens.end(), [](const BiMonomial& a, const BiMonomial& b) {
    if (a.x != b.x) return a.x > b.x;
    return a.t > b.t;
  });
  return gens;
}

CheckReport fail(CheckReport rep, Witness w) {
  rep.verdict = Verdict::Fail;
  rep.witness = std::move(w);
  return rep;
}

bool expensive_failure(const Error& e) {
  return e.kind() == ErrorKind::Overflow || e.kind() == ErrorKind::KMaxExceeded;
}

}  // namespace

Candidate Candidate::make(const Setup& setup, const BiMonomial& element, int source) {
  Candidate c{element, source};
  require_valid(setup, c);
  return c;
}

std::optional<std::string> candidate_problem(const Setup& setup, const Candidate& c) {
  if (c.element.tdegree() != 1) return "candidate must have T-degree one";
  const auto& src = setup.source(c.source);
  const auto& gens = src.gens();
  if (std::find(gens.begin(), gens.end(), c.element) == gens.end()) {
    return to_string(c.element, setup.ctx()) + " is not a minimal generator of its source";
  }
  if (contains(setup.relations(), c.element)) {
    return to_string(c.element, setup.ctx()) + " is zero in M";
  }
  return std::nullopt;
}

std::string to_string(const Candidate& c, const RingContext& ctx) {
  std::string src = c.source == -1 ? "G1" : c.source == 0 ? "J" : "I" + std::to_string(c.source);
  return to_string(c.element, ctx) + " in " + src;
}

Window default_window(const Setup& setup) {
  int d = 0;
  try {
    d = dimension_D(setup);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TrivialModule) throw;
  }
  Window w;
  w.r_start = std::max(d, 0) + 2;
  w.r_end = w.r_start + 2;
  w.p_max = 2;
  return w;
}

Window doubled(const Window& w) {
  Window r;
  r.r_start = 2 * w.r_start;
  r.r_end = r.r_start + 2 * (w.r_end - w.r_start);
  r.p_max = 2 * w.p_max;
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::Candidate: return "candidate";
    case Condition::FC1: return "FC1";
    case Condition::FC2: return "FC2";
    case Condition::FC3: return "FC3";
    case Condition::WeakFCSequence: return "weak-FC-sequence";
    case Condition::FCSequence: return "FC-sequence";
    case Condition::Superficial: return "superficial";
    case Condition::JointReduction: return "joint-reduction";
  }
  return "?";
}

std::vector<int> default_family(const Setup& setup) {
  std::vector<int> f(static_cast<std::size_t>(setup.q()));
  std::iota(f.begin(), f.end(), 1);
  return f;
}

Setup quotient(const Setup& setup, const std::vector<Candidate>& cs) {
  std::vector<BiMonomial> extra;
  for (const auto& c : cs) extra.push_back(c.element);
  return setup.with_relations(extra);
}

// ---------------------------------------------------------------- FC1..FC3

CheckReport check_fc1(const Setup& setup, const Candidate& c, const Window& w,
                      const std::vector<int>& family) {
  require_valid(setup, c);
  auto pos = std::find(family.begin(), family.end(), c.source);
  if (pos == family.end()) {
    throw Error(ErrorKind::InvalidArgument, "candidate source is not in the family");
  }
  const auto axis = static_cast<std::size_t>(pos - family.begin());
  CheckReport rep;
  rep.condition = Condition::FC1;
  rep.window = w;
  Powers pw(setup, family);
  const BiMonomial& x = c.element;
  const XIdeal principal = XIdeal::from_gens({x.x});

  std::vector<std::pair<int, int>> ranges(family.size(), {0, w.r_end});
  ranges[axis] = {std::max(w.r_start, 1), w.r_end};
  try {
    for (const auto& r : box(ranges)) {
      auto lower = r;
      --lower[axis];
      auto up = pw(r);
      auto down = pw(lower);
      for (int p = 0; p <= w.p_max; ++p) {
        for (const auto& tau : t_monomials(setup.ctx().rank, total(r) + p)) {
          if (!leq(x.t, tau)) continue;
          XIdeal lhs = up->lifted(tau).intersect(principal);
          XIdeal rhs = times_element(*down, tau, x) + pw.b(tau);
          for (const auto& g : lhs.gens()) {
            if (rhs.contains(g)) continue;
            return fail(rep, Witness{with_p(r, p), BiMonomial{g, tau},
                                     "in I^r M_p and x M, but not in x I^(r-d) M_p"});
          }
        }
      }
    }
  } catch (const Error& e) {
    if (!expensive_failure(e)) throw;
    rep.verdict = Verdict::Inconclusive;
    rep.note = e.what();
    return rep;
  }
  rep.note = "verified on window, r' = " + std::to_string(ranges[axis].first);
  return rep;
}

CheckReport check_fc1(const Setup& setup, const Candidate& c, const Window& w) {
  return check_fc1(setup, c, w, default_family(setup));
}

CheckReport check_fc2(const Setup& setup, const Candidate& c) {
  require_valid(setup, c);
  CheckReport rep;
  rep.condition = Condition::FC2;
  auto bx = colon(setup.relations(), c.element);
  auto sat = setup.saturated_relations();
  for (const auto& g : bx.gens()) {
    if (!contains(sat, g)) {
      return fail(rep, Witness{{}, g, "in 0_M : x but not in 0_M : I^inf"});
    }
  }
  rep.note = "exact";
  return rep;
}

CheckReport check_fc3(const Setup& setup, const Candidate& c) {
  require_valid(setup, c);
  if (setup.saturated_relations().is_unit()) {
    throw Error(ErrorKind::TrivialModule, "M* is zero");
  }
  CheckReport rep;
  rep.condition = Condition::FC3;
  const int before = sat_dim(setup);
  const int after = sat_dim(quotient(setup, {c}));
  rep.dims = {before, after};
  rep.note = "dim " + std::to_string(before) + " -> " + std::to_string(after);
  if (after != before - 1) rep.verdict = Verdict::Fail;
  return rep;
}

// --------------------------------------------------------------- sequences

CheckReport check_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                           SequenceMode mode, const Window& w, const std::vector<int>& family) {
  if (cs.empty()) throw Error(ErrorKind::InvalidArgument, "empty sequence");
  CheckReport rep;
  rep.condition = mode == SequenceMode::FC ? Condition::FCSequence : Condition::WeakFCSequence;
  rep.window = w;
  Setup cur = setup;
  rep.dims.push_back(sat_dim(cur));
  auto stop = [&](int i, CheckReport step) {
    rep.verdict = step.verdict;
    rep.failed_step = i;
    rep.note = "step " + std::to_string(i + 1) + ": " + to_string(step.condition) + " " +
               to_string(step.verdict) + (step.note.empty() ? "" : " (" + step.note + ")");
    if (step.witness) rep.witness = step.witness;
    rep.steps.push_back(std::move(step));
  };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const int idx = static_cast<int>(i);
    const auto& c = cs[i];
    if (auto why = candidate_problem(cur, c)) {
      CheckReport bad;
      bad.condition = Condition::Candidate;
      bad.verdict = Verdict::Fail;
      bad.note = *why;
      stop(idx, std::move(bad));
      return rep;
    }
    if (!cur.nondegenerate()) {
      CheckReport bad;
      bad.condition = Condition::Candidate;
      bad.verdict = Verdict::Fail;
      bad.note = "torsion ideal is nilpotent on the quotient";
      stop(idx, std::move(bad));
      return rep;
    }
    auto fc1 = check_fc1(cur, c, w, family);
    if (!fc1.passed()) {
      stop(idx, std::move(fc1));
      return rep;
    }
    rep.steps.push_back(std::move(fc1));
    auto fc2 = check_fc2(cur, c);
    if (!fc2.passed()) {
      stop(idx, std::move(fc2));
      return rep;
    }
    rep.steps.push_back(std::move(fc2));
    CheckReport fc3;
    try {
      fc3 = check_fc3(cur, c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TrivialModule) throw;
      fc3.condition = Condition::FC3;
      fc3.verdict = Verdict::Fail;
      fc3.note = "M* is zero";
    }
    rep.fc3.push_back(fc3.passed());
    if (mode == SequenceMode::FC && !fc3.passed()) {
      rep.dims.push_back(sat_dim(quotient(cur, {c})));
      stop(idx, std::move(fc3));
      return rep;
    }
    rep.steps.push_back(std::move(fc3));
    cur = quotient(cur, {c});
    rep.dims.push_back(sat_dim(cur));
  }
  std::ostringstream os;
  os << "dims";
  for (int d : rep.dims) os << ' ' << d;
  rep.note = os.str();
  return rep;
}

CheckReport check_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                           SequenceMode mode, const Window& w) {
  return check_sequence(setup, cs, mode, w, default_family(setup));
}

// ------------------------------------------------------------- superficial

CheckReport check_superficial(const Setup& setup, const Candidate& c, int epsilon,
                              const Window& w) {
  if (epsilon < 1 || epsilon > setup.q() || c.source != epsilon) {
    throw Error(ErrorKind::InvalidArgument, "superficial candidate must come from I_epsilon");
  }
  require_valid(setup, c);
  CheckReport rep;
  rep.condition = Condition::Superficial;
  rep.window = w;
  const int q = setup.q();
  Powers pw(setup, default_family(setup));
  const BiMonomial& x = c.element;
  const int comp = component_of(x);
  std::vector<std::pair<int, int>> ranges(static_cast<std::size_t>(q), {w.r_start, w.r_end});
  try {
    for (const auto& r : box(ranges)) {
      auto one = r;
      for (auto& v : one) ++v;
      auto up = one;
      ++up[static_cast<std::size_t>(epsilon - 1)];
      auto p_r = pw(r);
      auto p_one = pw(one);
      auto p_up = pw(up);
      for (int p = 0; p <= w.p_max; ++p) {
        for (const auto& tau : t_monomials(setup.ctx().rank, total(r) + q + p)) {
          ExpVec tx = tau;
          ++tx[comp];
          XIdeal col = (p_up->lifted(tx) + pw.b(tx)).colon(x.x);
          XIdeal lhs = col.intersect(p_r->lifted(tau) + pw.b(tau));
          XIdeal rhs = p_one->lifted(tau) + pw.b(tau);
          for (const auto& g : lhs.gens()) {
            if (rhs.contains(g)) continue;
            return fail(rep, Witness{with_p(r, p), BiMonomial{g, tau},
                                     "in (I^(r+1+d) M_p : x) and I^r M_(p+q), not in I^(r+1) M_p"});
          }
        }
      }
    }
  } catch (const Error& e) {
    if (!expensive_failure(e)) throw;
    rep.verdict = Verdict::Inconclusive;
    rep.note = e.what();
    return rep;
  }
  rep.note = "verified on window";
  return rep;
}

CheckReport check_superficial_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                                       const Window& w) {
  CheckReport rep;
  rep.condition = Condition::Superficial;
  rep.window = w;
  Setup cur = setup;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i > 0 && cs[i].source < cs[i - 1].source) {
      throw Error(ErrorKind::InvalidArgument, "superficial indices must be non-decreasing");
    }
    if (auto why = candidate_problem(cur, cs[i])) {
      rep.verdict = Verdict::Fail;
      rep.failed_step = static_cast<int>(i);
      rep.note = "step " + std::to_string(i + 1) + ": " + *why;
      return rep;
    }
    auto step = check_superficial(cur, cs[i], cs[i].source, w);
    if (!step.passed()) {
      rep.verdict = step.verdict;
      rep.failed_step = static_cast<int>(i);
      rep.witness = step.witness;
      rep.steps.push_back(std::move(step));
      return rep;
    }
    rep.steps.push_back(std::move(step));
    cur = quotient(cur, {cs[i]});
  }
  rep.note = "verified on window";
  return rep;
}

// --------------------------------------------------------- joint reduction

CheckReport check_joint_reduction(const Setup& setup,
                                  const std::vector<std::vector<Candidate>>& jr,
                                  const Window& w) {
  const int q = setup.q();
  if (static_cast<int>(jr.size()) > q) {
    throw Error(ErrorKind::InvalidArgument, "more reduction modules than I's");
  }
  for (std::size_t j = 0; j < jr.size(); ++j) {
    for (const auto& c : jr[j]) {
      if (c.source != static_cast<int>(j) + 1 ||
          !contains(setup.source(c.source), c.element)) {
        throw Error(ErrorKind::InvalidArgument, "reduction element not in its I_j");
      }
    }
  }
  CheckReport rep;
  rep.condition = Condition::JointReduction;
  rep.window = w;
  Powers pw(setup, default_family(setup));
  std::vector<std::pair<int, int>> ranges(static_cast<std::size_t>(q),
                                          {std::max(w.r_start, 1), w.r_end});
  try {
    for (const auto& r : box(ranges)) {
      auto full = pw(r);
      std::vector<std::shared_ptr<const SliceMap>> lower;
      for (std::size_t j = 0; j < jr.size(); ++j) {
        auto rj = r;
        --rj[j];
        lower.push_back(pw(rj));
      }
      for (int p = 0; p <= w.p_max; ++p) {
        for (const auto& tau : t_monomials(setup.ctx().rank, total(r) + p)) {
          XIdeal rhs = pw.b(tau);
          for (std::size_t j = 0; j < jr.size(); ++j) {
            for (const auto& c : jr[j]) rhs = rhs + times_element(*lower[j], tau, c.element);
          }
          const XIdeal lhs = full->lifted(tau);
          for (const auto& g : lhs.gens()) {
            if (rhs.contains(g)) continue;
            return fail(rep, Witness{with_p(r, p), BiMonomial{g, tau},
                                     "in I^r M_p but not in the reduction sum"});
          }
        }
      }
    }
  } catch (const Error& e) {
    if (!expensive_failure(e)) throw;
    rep.verdict = Verdict::Inconclusive;
    rep.note = e.what();
    return rep;
  }
  rep.note = "verified on window";
  return rep;
}

// ------------------------------------------------------------------ search

std::optional<Candidate> find_weak_fc(const Setup& setup, int i, const Window& w) {
  if (!setup.nondegenerate()) return std::nullopt;
  for (const auto& g : lex_generators(setup.source(i))) {
    Candidate c{g, i};
    if (candidate_problem(setup, c)) continue;
    if (!check_fc2(setup, c).passed()) continue;
    if (!check_fc1(setup, c, w).passed()) continue;
    return c;
  }
  return std::nullopt;
}

MaximalFamily assemble_maximal_family(const Setup& setup, const Window& w) {
  MaximalFamily fam;
  fam.parts.resize(static_cast<std::size_t>(setup.q()));
  Setup cur = setup;
  for (int i = 1; i <= setup.q(); ++i) {
    for (;;) {
      if (!cur.nondegenerate()) {
        fam.ended_by_torsion = true;
        return fam;
      }
      auto c = find_weak_fc(cur, i, w);
      if (!c) break;
      fam.parts[static_cast<std::size_t>(i - 1)].push_back(*c);
      fam.sequence.push_back(*c);
      cur = quotient(cur, {*c});
    }
  }
  fam.ended_by_torsion = !cur.nondegenerate();
  return fam;
}

namespace {

constexpr int kSearchBudget = 4000;

bool search(const Setup& cur, const std::vector<int>& sources, std::size_t depth,
            SequenceMode mode, const Window& w, const std::vector<int>& family,
            std::vector<Candidate>& acc, int& budget) {
  if (depth == sources.size()) return true;
  if (!cur.nondegenerate()) return false;
  for (const auto& g : lex_generators(cur.source(sources[depth]))) {
    if (--budget < 0) return false;
    Candidate c{g, sources[depth]};
    if (candidate_problem(cur, c)) continue;
    if (!check_fc2(cur, c).passed()) continue;
    if (mode == SequenceMode::FC) {
      try {
        if (!check_fc3(cur, c).passed()) continue;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TrivialModule) throw;
        continue;
      }
    }
    if (!check_fc1(cur, c, w, family).passed()) continue;
    acc.push_back(c);
    if (search(quotient(cur, {c}), sources, depth + 1, mode, w, family, acc, budget)) {
      return true;
    }
    acc.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<Candidate>> find_sequence(const Setup& setup,
                                                    const std::vector<int>& sources,
                                                    SequenceMode mode, const Window& w,
                                                    const std::vector<int>& family) {
  std::vector<Candidate> acc;
  int budget = kSearchBudget;
  if (search(setup, sources, 0, mode, w, family, acc, budget)) return acc;
  return std::nullopt;
}

std::vector<int> shape_sources(const std::vector<int>& k) {
  std::vector<int> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int c = 0; c < k[i]; ++c) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

}  // namespace mixmult

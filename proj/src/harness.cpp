#include "mixmult/harness.hpp"

#include <algorithm>
#include <numeric>

namespace mixmult {

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::Teo1: return "teo1";
    case Theorem::Teo4: return "teo4";
    case Theorem::Generalized: return "generalized";
    case Theorem::CorGeneralized: return "cor-generalized";
    case Theorem::TrungVerma: return "trung-verma";
    case Theorem::Mod1: return "mod1";
    case Theorem::Mod2: return "mod2";
    case Theorem::Mod3: return "mod3";
  }
  return "?";
}

const char* to_string(CaseVerdict v) {
  switch (v) {
    case CaseVerdict::Confirmed: return "confirmed";
    case CaseVerdict::Conditional: return "conditional";
    case CaseVerdict::Refuted: return "refuted";
    case CaseVerdict::Rejected: return "rejected";
  }
  return "?";
}

std::optional<Theorem> theorem_from_string(const std::string& s) {
  for (auto t : {Theorem::Teo1, Theorem::Teo4, Theorem::Generalized, Theorem::CorGeneralized,
                 Theorem::TrungVerma, Theorem::Mod1, Theorem::Mod2, Theorem::Mod3}) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}

std::vector<int> with_j_family(const Setup& setup) {
  std::vector<int> f(static_cast<std::size_t>(setup.q()) + 1);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

MonomialModule generated_module(const RingContext& ctx, const std::vector<Candidate>& cs) {
  std::vector<BiMonomial> gens;
  for (const auto& c : cs) gens.push_back(c.element);
  return MonomialModule::slice(ctx, 1, std::move(gens));
}

bool finite_colength(const MonomialModule& e, const MonomialModule& relations) {
  Relations rel(relations);
  SliceMap m = SliceMap::from_module(e);
  for (const auto& tau : t_monomials(e.ctx().rank, 1)) {
    if (!count_standard(m.lifted(tau) + rel.at(tau), e.ctx().d).finite) return false;
  }
  return true;
}

namespace {

Window window_for(const Setup& setup, const HarnessOptions& opt) {
  return opt.window ? *opt.window : default_window(setup);
}

// Detected degree of h, checked against the index; returns e^j(...).
std::int64_t mixed_lhs(const Setup& setup, const MultiIndex& idx, const HarnessOptions& opt,
                       VerificationCase& vc, bool need_positive_degree) {
  setup.require_nondegenerate();
  MixedLengthFunction f(setup);
  f.set_kmax(opt.policy.kmax);
  f.set_store(opt.policy.store);
  const int formula = dimension_D(setup);
  const int deg = detect_degree(f, formula, opt.policy).degree;
  if (deg != formula) {
    vc.warnings.push_back("detected degree " + std::to_string(deg) +
                          " differs from the dimension formula " + std::to_string(formula));
  }
  if (need_positive_degree && deg == 0) {
    throw Error(ErrorKind::DegreeMismatch, "the statement needs D > 0");
  }
  return mixed_multiplicity(f, idx, deg, opt.policy).value;
}

void require_shape(const std::vector<Candidate>& cs, const std::vector<int>& k) {
  std::vector<int> count(k.size(), 0);
  for (const auto& c : cs) {
    if (c.source < 1 || c.source > static_cast<int>(k.size())) {
      throw Error(ErrorKind::InvalidArgument, "sequence element outside I_1..I_q");
    }
    ++count[static_cast<std::size_t>(c.source - 1)];
  }
  if (count != k) throw Error(ErrorKind::InvalidArgument, "sequence does not match shape k");
}

std::int64_t br_coefficient(const MonomialModule& e, const MonomialModule& relations, int j,
                            int degree, const StabilizationPolicy& policy) {
  if (relations.is_unit()) return 0;
  return buchsbaum_rim(e, relations, j, policy, degree).value;
}

void decide(VerificationCase& vc) {
  for (const auto& ch : vc.checks) {
    if (ch.verdict == Verdict::Fail) {
      vc.verdict = CaseVerdict::Rejected;
      if (vc.note.empty()) vc.note = std::string("hypothesis failed: ") + to_string(ch.condition);
      if (!ch.note.empty()) vc.note += " (" + ch.note + ")";
      return;
    }
  }
  const bool inconclusive = std::any_of(vc.checks.begin(), vc.checks.end(), [](const auto& c) {
    return c.verdict == Verdict::Inconclusive;
  });
  if (inconclusive || !vc.lhs || !vc.rhs) {
    vc.verdict = CaseVerdict::Conditional;
    return;
  }
  vc.verdict = *vc.lhs == *vc.rhs ? CaseVerdict::Confirmed : CaseVerdict::Refuted;
}

// Resolves the sequence for Teo1/Teo4: given, or found by search.
std::optional<std::vector<Candidate>> resolve_sequence(
    const Setup& setup, const std::optional<std::vector<Candidate>>& cs, const MultiIndex& idx,
    const Window& w, VerificationCase& vc) {
  if (cs) {
    require_shape(*cs, idx.k);
    return cs;
  }
  auto found = find_sequence(setup, shape_sources(idx.k), SequenceMode::FC, w,
                             with_j_family(setup));
  if (!found) {
    vc.note = "no FC-sequence of this shape among monomial candidates";
  }
  return found;
}

}  // namespace

VerificationCase verify_teo1(const Setup& setup, const std::optional<std::vector<Candidate>>& cs,
                             const MultiIndex& idx, const HarnessOptions& opt) {
  VerificationCase vc;
  vc.target = Theorem::Teo1;
  vc.index = idx;
  if (static_cast<int>(idx.k.size()) != setup.q()) {
    throw Error(ErrorKind::ArityError, "index has wrong number of r-orders");
  }
  vc.lhs = mixed_lhs(setup, idx, opt, vc, true);
  const Window w = window_for(setup, opt);
  auto seq = resolve_sequence(setup, cs, idx, w, vc);
  if (!seq) {
    if (*vc.lhs != 0 && idx.k0 > 0) {
      vc.note += "; e^j is nonzero, so the monomial search is incomplete";
    }
    vc.verdict = CaseVerdict::Conditional;
    return vc;
  }
  vc.sequence = *seq;
  if (!seq->empty()) {
    vc.checks.push_back(check_sequence(setup, *seq, SequenceMode::FC, w, with_j_family(setup)));
  }
  const auto rel = quotient(setup, *seq).saturated_relations();
  vc.rhs = br_coefficient(setup.j(), rel, idx.j, idx.k0 + idx.j, opt.policy);
  decide(vc);
  return vc;
}

VerificationCase verify_teo4(const Setup& setup, const std::optional<std::vector<Candidate>>& cs,
                             const MultiIndex& idx, const HarnessOptions& opt) {
  if (static_cast<int>(idx.k.size()) != setup.q()) {
    throw Error(ErrorKind::ArityError, "index has wrong number of r-orders");
  }
  const int t = std::accumulate(idx.k.begin(), idx.k.end(), 0);
  const auto ht = height_mod_ann(setup);
  if (ht.height <= t || idx.k0 <= 0) {
    throw Error(ErrorKind::HeightPreconditionFailed,
                "needs ht " + std::to_string(ht.height) + " > t " + std::to_string(t) +
                    " and k0 > 0");
  }
  VerificationCase vc;
  vc.target = Theorem::Teo4;
  vc.index = idx;
  vc.height = ht.height;
  if (ht.flagged) vc.warnings.push_back("I + Ann M is the whole ring up to irrelevant torsion");
  vc.lhs = mixed_lhs(setup, idx, opt, vc, true);
  const Window w = window_for(setup, opt);
  auto seq = resolve_sequence(setup, cs, idx, w, vc);
  if (!seq) {
    vc.verdict = CaseVerdict::Conditional;
    return vc;
  }
  vc.sequence = *seq;
  if (!seq->empty()) {
    vc.checks.push_back(check_sequence(setup, *seq, SequenceMode::FC, w, with_j_family(setup)));
  }
  const Setup bar = quotient(setup, *seq);
  const int degree = idx.k0 + idx.j;
  vc.rhs = br_coefficient(setup.j(), bar.relations(), idx.j, degree, opt.policy);
  vc.rhs_saturated = br_coefficient(setup.j(), bar.saturated_relations(), idx.j, degree,
                                    opt.policy);
  decide(vc);
  if (vc.verdict == CaseVerdict::Confirmed && vc.rhs != vc.rhs_saturated) {
    vc.verdict = CaseVerdict::Refuted;
    vc.note = "saturated and unsaturated quotients disagree";
  }
  return vc;
}

VerificationCase verify_generalized(const Setup& setup, const std::vector<Candidate>& ys,
                                    const std::vector<Candidate>& xs, const MultiIndex& idx,
                                    const HarnessOptions& opt) {
  if (static_cast<int>(idx.k.size()) != setup.q()) {
    throw Error(ErrorKind::ArityError, "index has wrong number of r-orders");
  }
  require_shape(xs, idx.k);
  int from_g1 = 0, from_j = 0;
  for (const auto& y : ys) {
    if (y.source == -1) {
      ++from_g1;
    } else if (y.source == 0) {
      ++from_j;
    } else {
      throw Error(ErrorKind::InvalidArgument, "ys must come from J or G_1");
    }
  }
  if (from_g1 != idx.j || from_j != idx.k0) {
    throw Error(ErrorKind::InvalidArgument, "ys do not match (j, k0)");
  }
  const int t = static_cast<int>(xs.size());
  const auto ht = height_mod_ann(setup);
  if (ht.height <= t) {
    throw Error(ErrorKind::HeightPreconditionFailed,
                "needs ht " + std::to_string(ht.height) + " > t " + std::to_string(t));
  }
  VerificationCase vc;
  vc.target = idx.j > 0 ? Theorem::CorGeneralized : Theorem::Generalized;
  vc.index = idx;
  vc.sequence = xs;
  vc.ys = ys;
  vc.height = ht.height;
  vc.lhs = mixed_lhs(setup, idx, opt, vc, false);
  const int degree = idx.total();

  const Window w = window_for(setup, opt);
  if (!xs.empty()) {
    vc.checks.push_back(check_sequence(setup, xs, SequenceMode::FC, w, with_j_family(setup)));
  }
  if (!ys.empty() && (xs.empty() || vc.checks.back().passed())) {
    std::vector<int> fam = with_j_family(setup);
    if (idx.j > 0) fam.insert(fam.begin(), -1);
    vc.checks.push_back(check_sequence(quotient(setup, xs), ys, SequenceMode::WeakFC, w, fam));
  }
  std::vector<Candidate> all = ys;
  all.insert(all.end(), xs.begin(), xs.end());
  const auto gen = generated_module(setup.ctx(), all);
  if (!finite_colength(gen, setup.relations())) {
    throw Error(ErrorKind::ColengthError,
                "the generated module does not have finite colength on M");
  }
  vc.rhs = br_coefficient(gen, setup.relations(), 0, degree, opt.policy);
  decide(vc);
  return vc;
}

VerificationCase verify_trung_verma(const Setup& setup, const std::vector<Candidate>& cs,
                                    const MultiIndex& idx, const HarnessOptions& opt) {
  if (static_cast<int>(idx.k.size()) != setup.q()) {
    throw Error(ErrorKind::ArityError, "index has wrong number of r-orders");
  }
  if (idx.j != 0 || idx.k0 < 1) {
    throw Error(ErrorKind::InvalidArgument, "expects e^0 with a positive J-order");
  }
  require_shape(cs, idx.k);
  VerificationCase vc;
  vc.target = Theorem::TrungVerma;
  vc.index = idx;
  vc.sequence = cs;
  vc.lhs = mixed_lhs(setup, idx, opt, vc, false);
  vc.checks.push_back(check_superficial_sequence(setup, cs, window_for(setup, opt)));
  const auto rel = quotient(setup, cs).saturated_relations();
  const int dim = rel.is_unit() ? -1 : proj_dim(rel);
  vc.rhs = br_coefficient(setup.j(), rel, 0, idx.k0, opt.policy);
  decide(vc);
  const bool criterion = (dim == idx.k0) == (*vc.lhs != 0);
  vc.note = "dim Supp of the saturated quotient = " + std::to_string(dim);
  if (vc.verdict == CaseVerdict::Confirmed && !criterion) {
    vc.verdict = CaseVerdict::Refuted;
    vc.note += "; dimension criterion fails";
  }
  return vc;
}

VerificationCase verify_mod3(const RingContext& ctx, const std::vector<MonomialModule>& e,
                             const std::vector<Candidate>& sequence, int j,
                             const std::vector<int>& k, const HarnessOptions& opt) {
  const int target = ctx.d + ctx.rank - 1;
  if (j < 0 || j + std::accumulate(k.begin(), k.end(), 0) != target) {
    throw Error(ErrorKind::DegreeMismatch, "j + |k| must equal d + p - 1");
  }
  if (e.size() != k.size() || e.empty()) {
    throw Error(ErrorKind::ArityError, "need one order per module");
  }
  const auto zero = MonomialModule::zero_ideal(ctx);
  for (const auto& m : e) {
    if (!finite_colength(m, zero)) {
      throw Error(ErrorKind::ColengthError, "every E_i must have finite colength");
    }
  }
  std::vector<int> count(k.size(), 0);
  int from_free = 0;
  for (const auto& c : sequence) {
    if (c.source == -1) {
      ++from_free;
    } else if (c.source >= 1 && c.source <= static_cast<int>(k.size())) {
      ++count[static_cast<std::size_t>(c.source - 1)];
    } else {
      throw Error(ErrorKind::InvalidArgument, "sequence element from an unknown module");
    }
  }
  if (from_free != j || count != k) {
    throw Error(ErrorKind::DegreeMismatch, "sequence does not match (j, k)");
  }

  VerificationCase vc;
  vc.target = Theorem::Mod3;
  vc.index = MultiIndex{j, 0, k};
  vc.sequence = sequence;

  BuchsbaumRimFunction psi(zero, e);
  psi.set_kmax(opt.policy.kmax);
  psi.set_store(opt.policy.store);
  std::vector<int> order = k;
  order.push_back(j);
  GridPoint base(order.size(), target + 2);
  if (!opt.policy.base.empty() && opt.policy.base.size() == order.size()) base = opt.policy.base;
  if (opt.policy.base.empty() && opt.policy.uniform_base > 0) {
    base.assign(order.size(), opt.policy.uniform_base);
  }
  vc.lhs = stabilized_difference(psi, order, base, opt.policy).value;

  const Setup setup = Setup::from_parts(zero, MonomialModule::full_slice(ctx, 1), e);
  std::vector<int> fam{-1};
  for (int i = 1; i <= setup.q(); ++i) fam.push_back(i);
  const Window w = opt.window ? *opt.window : default_window(setup);
  vc.checks.push_back(check_sequence(setup, sequence, SequenceMode::WeakFC, w, fam));

  const auto gen = generated_module(ctx, sequence);
  if (!finite_colength(gen, zero)) {
    vc.note = "the generated module does not have finite colength";
    decide(vc);
    if (vc.verdict != CaseVerdict::Rejected) vc.verdict = CaseVerdict::Conditional;
    return vc;
  }
  vc.rhs = br_coefficient(gen, zero, 0, target, opt.policy);
  decide(vc);
  return vc;
}

}  // namespace mixmult

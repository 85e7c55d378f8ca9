#include "mixmult/graded.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace mixmult {

std::vector<ExpVec> t_monomials(int rank, int degree) {
  std::vector<ExpVec> out;
  if (degree < 0) return out;
  ExpVec e{};
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == rank - 1) {
      e[var] = left;
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[var] = a;
      rec(var + 1, left - a);
    }
    e[var] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- SliceMap

SliceMap SliceMap::from_module(const MonomialModule& m) {
  if (m.mode() != ModuleMode::Slice) throw Error(ErrorKind::ModeMismatch, "expected a slice");
  SliceMap s(m.degree());
  std::map<ExpVec, std::vector<ExpVec>> groups;
  for (const auto& g : m.gens()) groups[g.t].push_back(g.x);
  for (auto& [t, xs] : groups) s.parts_[t] = XIdeal::from_gens(std::move(xs));
  return s;
}

SliceMap SliceMap::unit() {
  SliceMap s(0);
  s.parts_[ExpVec{}] = XIdeal::unit();
  return s;
}

void SliceMap::add(const ExpVec& tau, const XIdeal& part) {
  if (part.is_zero()) return;
  auto it = parts_.find(tau);
  if (it == parts_.end()) {
    parts_.emplace(tau, part);
  } else {
    it->second = it->second + part;
  }
}

XIdeal SliceMap::lifted(const ExpVec& tau) const {
  std::vector<ExpVec> gens;
  for (const auto& [sigma, part] : parts_) {
    if (leq(sigma, tau)) gens.insert(gens.end(), part.gens().begin(), part.gens().end());
  }
  return XIdeal::from_gens(std::move(gens));
}

SliceMap SliceMap::times(const SliceMap& other) const {
  std::map<ExpVec, std::vector<ExpVec>> acc;
  for (const auto& [s1, p1] : parts_) {
    for (const auto& [s2, p2] : other.parts_) {
      auto& bucket = acc[mixmult::add(s1, s2)];
      for (const auto& a : p1.gens()) {
        for (const auto& b : p2.gens()) bucket.push_back(mixmult::add(a, b));
      }
    }
  }
  SliceMap out(degree_ + other.degree_);
  for (auto& [t, xs] : acc) out.parts_[t] = XIdeal::from_gens(std::move(xs));
  return out;
}

MonomialModule SliceMap::to_module(const RingContext& ctx) const {
  std::vector<BiMonomial> gens;
  for (const auto& [t, part] : parts_) {
    for (const auto& x : part.gens()) gens.push_back(BiMonomial{x, t});
  }
  return MonomialModule::slice(ctx, degree_, std::move(gens));
}

// --------------------------------------------------------------- Relations

Relations::Relations(MonomialModule b) : b_(std::move(b)) {
  if (b_.mode() != ModuleMode::Ideal) throw Error(ErrorKind::ModeMismatch, "relations must be an ideal");
}

XIdeal Relations::at(const ExpVec& tau) const {
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(tau);
    if (it != memo_.end()) return it->second;
  }
  std::vector<ExpVec> gens;
  for (const auto& g : b_.gens()) {
    if (leq(g.t, tau)) gens.push_back(g.x);
  }
  XIdeal part = XIdeal::from_gens(std::move(gens));
  std::lock_guard lock(mutex_);
  memo_.emplace(tau, part);
  return part;
}

SliceMap Relations::reduce(const SliceMap& s) const {
  if (b_.is_zero()) return s;
  SliceMap out(s.degree());
  for (const auto& [tau, part] : s.parts()) {
    XIdeal bt = at(tau);
    std::vector<ExpVec> keep;
    for (const auto& g : part.gens()) {
      if (!bt.contains(g)) keep.push_back(g);
    }
    out.add(tau, XIdeal::from_gens(std::move(keep)));
  }
  return out;
}

// -------------------------------------------------------------- PowerCache

PowerCache::PowerCache(std::vector<SliceMap> family, std::shared_ptr<const Relations> rel)
    : family_(std::move(family)), rel_(std::move(rel)) {}

std::shared_ptr<const SliceMap> PowerCache::power(const std::vector<int>& exps) const {
  if (exps.size() != family_.size()) throw Error(ErrorKind::InvalidArgument, "power arity");
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(exps);
    if (it != memo_.end()) return it->second;
  }
  std::shared_ptr<const SliceMap> result;
  auto last = std::find_if(exps.rbegin(), exps.rend(), [](int e) { return e != 0; });
  if (last == exps.rend()) {
    result = std::make_shared<const SliceMap>(rel_->reduce(SliceMap::unit()));
  } else {
    if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
      throw Error(ErrorKind::InvalidArgument, "negative power");
    }
    const auto i = static_cast<std::size_t>(std::distance(last, exps.rend()) - 1);
    auto lower = exps;
    --lower[i];
    auto base = power(lower);
    result = std::make_shared<const SliceMap>(rel_->reduce(base->times(family_[i])));
  }
  std::lock_guard lock(mutex_);
  return memo_.emplace(exps, result).first->second;
}

// ------------------------------------------------------------------- Setup

MonomialModule slice_from_terms(const RingContext& ctx, const std::vector<Term>& terms) {
  std::vector<BiMonomial> gens;
  for (const auto& t : terms) {
    if (t.component < 0 || t.component >= ctx.rank) {
      throw Error(ErrorKind::ArityError, "term component out of range");
    }
    gens.push_back(term(t.x, t.component));
  }
  return MonomialModule::slice(ctx, 1, std::move(gens));
}

MonomialModule rees_piece(const MonomialModule& e, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative Rees degree");
  if (e.mode() != ModuleMode::Slice || e.degree() != 1) {
    throw Error(ErrorKind::ModeMismatch, "Rees pieces need a degree-one slice");
  }
  SliceMap base = SliceMap::from_module(e);
  SliceMap acc = SliceMap::unit();
  for (int i = 0; i < n; ++i) acc = acc.times(base);
  return acc.to_module(e.ctx());
}

namespace {

MonomialModule product_ideal(const RingContext& ctx, const std::vector<MonomialModule>& fam) {
  if (fam.empty()) return irrelevant_ideal(ctx);
  SliceMap acc = SliceMap::unit();
  for (const auto& f : fam) acc = acc.times(SliceMap::from_module(f));
  auto gens = acc.to_module(ctx).gens();
  return MonomialModule::ideal(ctx, gens);
}

void append_gens(std::ostringstream& os, const MonomialModule& m) {
  os << '{';
  bool first = true;
  for (const auto& g : m.gens()) {
    if (!first) os << ' ';
    first = false;
    os << to_string(g.x, m.ctx().d) << '@' << to_string(g.t, m.ctx().rank);
  }
  os << '}';
}

}  // namespace

Setup Setup::from_parts(MonomialModule relations, MonomialModule j,
                        std::vector<MonomialModule> family) {
  Setup s;
  s.ctx_ = relations.ctx();
  if (relations.mode() != ModuleMode::Ideal) {
    throw Error(ErrorKind::ModeMismatch, "relations must be an ideal of G");
  }
  auto check_slice = [&](const MonomialModule& m) {
    if (!(m.ctx() == s.ctx_) || m.mode() != ModuleMode::Slice || m.degree() != 1) {
      throw Error(ErrorKind::ModeMismatch, "J and I_i must be degree-one slices");
    }
  };
  check_slice(j);
  for (const auto& f : family) check_slice(f);
  s.relations_ = std::move(relations);
  s.j_ = std::move(j);
  s.family_ = std::move(family);
  s.torsion_ = product_ideal(s.ctx_, s.family_);
  s.full_g1_ = MonomialModule::full_slice(s.ctx_, 1);

  // J must have finite colength in G_1 modulo B.
  Relations rel(s.relations_);
  SliceMap jm = SliceMap::from_module(s.j_);
  for (const auto& tau : t_monomials(s.ctx_.rank, 1)) {
    auto c = count_standard(jm.lifted(tau) + rel.at(tau), s.ctx_.d);
    if (!c.finite) {
      throw Error(ErrorKind::ColengthError, "J does not have finite colength in M_1");
    }
  }
  return s;
}

Setup Setup::build(const RingContext& ctx, const std::vector<ExpVec>& a,
                   const std::vector<Term>& f, const std::vector<std::vector<Term>>& e) {
  std::vector<BiMonomial> bgens;
  for (const auto& x : a) bgens.push_back(BiMonomial{x, ExpVec{}});
  std::vector<MonomialModule> family;
  for (const auto& terms : e) family.push_back(slice_from_terms(ctx, terms));
  return from_parts(MonomialModule::ideal(ctx, std::move(bgens)), slice_from_terms(ctx, f),
                    std::move(family));
}

const MonomialModule& Setup::source(int id) const {
  if (id == -1) return full_g1_;
  if (id == 0) return j_;
  if (id < 1 || id > q()) throw Error(ErrorKind::UnknownReference, "no module I_" + std::to_string(id));
  return family_[static_cast<std::size_t>(id - 1)];
}

Setup Setup::with_relations(const std::vector<BiMonomial>& extra) const {
  auto gens = relations_.gens();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return with_relations_ideal(MonomialModule::ideal(ctx_, std::move(gens)));
}

Setup Setup::with_relations_ideal(MonomialModule b) const {
  return from_parts(std::move(b), j_, family_);
}

MonomialModule Setup::saturated_relations() const { return saturate(relations_, torsion_); }

Setup Setup::saturated() const { return with_relations_ideal(saturated_relations()); }

bool Setup::nondegenerate() const { return !saturated_relations().is_unit(); }

void Setup::require_nondegenerate() const {
  if (!nondegenerate()) {
    throw Error(ErrorKind::TrivialModule, "the torsion ideal is contained in the radical of Ann M");
  }
}

std::string Setup::fingerprint() const {
  std::ostringstream os;
  os << "d=" << ctx_.d << ";rank=" << ctx_.rank << ";B=";
  append_gens(os, relations_);
  os << ";J=";
  append_gens(os, j_);
  for (int i = 0; i < q(); ++i) {
    os << ";I" << (i + 1) << '=';
    append_gens(os, family_[static_cast<std::size_t>(i)]);
  }
  return os.str();
}

std::pair<MonomialModule, MonomialModule> power_product(const Setup& setup, int n, int p,
                                                        const std::vector<int>& r) {
  if (static_cast<int>(r.size()) != setup.q() || n < 0 || p < 0) {
    throw Error(ErrorKind::InvalidArgument, "bad power_product arguments");
  }
  auto rel = std::make_shared<const Relations>(setup.relations());
  std::vector<SliceMap> fam{SliceMap::from_module(setup.j())};
  for (const auto& f : setup.family()) fam.push_back(SliceMap::from_module(f));
  PowerCache powers(std::move(fam), rel);
  std::vector<int> e0{0}, en{n};
  e0.insert(e0.end(), r.begin(), r.end());
  en.insert(en.end(), r.begin(), r.end());
  auto num = powers.power(e0);
  auto den = powers.power(en);
  int s = n + p;
  for (int v : r) s += v;
  std::vector<BiMonomial> ng, dg;
  for (const auto& tau : t_monomials(setup.ctx().rank, s)) {
    XIdeal bt = rel->at(tau);
    const XIdeal nt = num->lifted(tau);
    const XIdeal dt = den->lifted(tau);
    for (const auto& x : nt.gens()) {
      if (!bt.contains(x)) ng.push_back({x, tau});
    }
    for (const auto& x : dt.gens()) {
      if (!bt.contains(x)) dg.push_back({x, tau});
    }
  }
  return {MonomialModule::slice(setup.ctx(), s, std::move(ng)),
          MonomialModule::slice(setup.ctx(), s, std::move(dg))};
}

// ------------------------------------------------------------ GridFunction

std::int64_t GridFunction::operator()(const GridPoint& point) const {
  if (static_cast<int>(point.size()) != axes()) {
    throw Error(ErrorKind::InvalidArgument, "grid point has wrong arity");
  }
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(point);
    if (it != memo_.end()) return it->second;
  }
  if (store_ != nullptr) {
    if (auto v = store_->lookup(fingerprint(), point)) {
      std::lock_guard lock(mutex_);
      memo_.emplace(point, *v);
      return *v;
    }
  }
  std::int64_t v = compute(point);
  {
    std::lock_guard lock(mutex_);
    if (memo_.emplace(point, v).second) ++computed_;
  }
  if (store_ != nullptr) store_->store(fingerprint(), point, v);
  return v;
}

bool GridFunction::is_cached(const GridPoint& point) const {
  {
    std::lock_guard lock(mutex_);
    if (memo_.count(point) != 0) return true;
  }
  if (store_ != nullptr) {
    if (auto v = store_->lookup(fingerprint(), point)) {
      std::lock_guard lock(mutex_);
      memo_.emplace(point, *v);
      return true;
    }
  }
  return false;
}

std::size_t GridFunction::computed_cells() const {
  std::lock_guard lock(mutex_);
  return computed_;
}

void GridFunction::prefetch(const std::vector<GridPoint>& points, int threads) const {
  std::vector<GridPoint> missing;
  {
    std::lock_guard lock(mutex_);
    for (const auto& pt : points) {
      if (memo_.count(pt) == 0) missing.push_back(pt);
    }
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  if (threads <= 1 || missing.size() < 2) {
    for (const auto& pt : missing) (*this)(pt);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= missing.size()) return;
      try {
        (*this)(missing[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), missing.size());
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::string point_text(const GridPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::int64_t min_degree(const XIdeal& u) {
  std::int64_t m = INT64_MAX;
  for (const auto& g : u.gens()) m = std::min(m, degree(g));
  return m;
}

void check_certificate(const CountResult& c, std::int64_t mindeg, int kmax, const GridPoint& pt) {
  if (c.count == 0) return;
  if (c.max_degree - mindeg + 1 > kmax) {
    throw Error(ErrorKind::KMaxExceeded, "finiteness certificate exceeds kmax at " + point_text(pt));
  }
}

std::shared_ptr<const Relations> make_relations(const MonomialModule& b) {
  return std::make_shared<const Relations>(b);
}

std::vector<SliceMap> mixed_family(const Setup& s) {
  std::vector<SliceMap> fam{SliceMap::from_module(s.j())};
  for (const auto& f : s.family()) fam.push_back(SliceMap::from_module(f));
  return fam;
}

std::vector<SliceMap> to_maps(const std::vector<MonomialModule>& mods) {
  std::vector<SliceMap> out;
  for (const auto& m : mods) {
    if (m.mode() != ModuleMode::Slice || m.degree() != 1) {
      throw Error(ErrorKind::ModeMismatch, "Buchsbaum-Rim modules must be degree-one slices");
    }
    out.push_back(SliceMap::from_module(m));
  }
  return out;
}

}  // namespace

// ------------------------------------------------------ MixedLengthFunction

MixedLengthFunction::MixedLengthFunction(Setup setup)
    : setup_(std::move(setup)),
      rel_(make_relations(setup_.relations())),
      powers_(mixed_family(setup_), rel_) {}

std::vector<std::string> MixedLengthFunction::axis_names() const {
  std::vector<std::string> names{"n", "p"};
  for (int i = 1; i <= setup_.q(); ++i) names.push_back("r" + std::to_string(i));
  return names;
}

std::string MixedLengthFunction::fingerprint() const { return "h:" + setup_.fingerprint(); }

std::int64_t MixedLengthFunction::compute(const GridPoint& pt) const {
  const int n = pt[0], p = pt[1];
  if (std::any_of(pt.begin(), pt.end(), [](int v) { return v < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "negative grid coordinate");
  }
  std::vector<int> e0{0}, en{n};
  int s = n + p;
  for (std::size_t i = 2; i < pt.size(); ++i) {
    e0.push_back(pt[i]);
    en.push_back(pt[i]);
    s += pt[i];
  }
  if (n == 0) return 0;
  auto num = powers_.power(e0);
  auto den = powers_.power(en);
  const int d = setup_.ctx().d;
  std::int64_t total = 0;
  for (const auto& tau : t_monomials(setup_.ctx().rank, s)) {
    XIdeal u = num->lifted(tau);
    if (u.is_zero()) continue;
    auto c = count_difference(u, den->lifted(tau) + rel_->at(tau), d);
    if (!c.finite) {
      throw Error(ErrorKind::Infinite, "infinite length at h" + point_text(pt));
    }
    check_certificate(c, min_degree(u), kmax(), pt);
    total += c.count;
  }
  return total;
}

// ---------------------------------------------------- BuchsbaumRimFunction

BuchsbaumRimFunction::BuchsbaumRimFunction(MonomialModule relations,
                                           std::vector<MonomialModule> modules)
    : relations_(std::move(relations)),
      modules_(std::move(modules)),
      rel_(make_relations(relations_)),
      powers_(to_maps(modules_), rel_) {
  if (modules_.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one module");
}

std::vector<std::string> BuchsbaumRimFunction::axis_names() const {
  if (modules_.size() == 1) return {"n", "q"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= modules_.size(); ++i) names.push_back("r" + std::to_string(i));
  names.push_back("q");
  return names;
}

std::string BuchsbaumRimFunction::fingerprint() const {
  std::ostringstream os;
  os << "br:d=" << relations_.ctx().d << ";rank=" << relations_.ctx().rank << ";B=";
  append_gens(os, relations_);
  for (const auto& m : modules_) {
    os << ";E=";
    append_gens(os, m);
  }
  return os.str();
}

std::int64_t BuchsbaumRimFunction::compute(const GridPoint& pt) const {
  if (std::any_of(pt.begin(), pt.end(), [](int v) { return v < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "negative grid coordinate");
  }
  std::vector<int> r(pt.begin(), pt.end() - 1);
  int s = pt.back();
  for (int v : r) s += v;
  auto den = powers_.power(r);
  const int d = relations_.ctx().d;
  std::int64_t total = 0;
  for (const auto& tau : t_monomials(relations_.ctx().rank, s)) {
    auto c = count_standard(den->lifted(tau) + rel_->at(tau), d);
    if (!c.finite) {
      throw Error(ErrorKind::Infinite, "infinite length at br" + point_text(pt) +
                                           ": module lacks finite colength");
    }
    check_certificate(c, 0, kmax(), pt);
    total += c.count;
  }
  return total;
}

std::int64_t h_value(const Setup& setup, int n, int p, const std::vector<int>& r) {
  if (static_cast<int>(r.size()) != setup.q()) throw Error(ErrorKind::InvalidArgument, "r arity");
  MixedLengthFunction f(setup);
  GridPoint pt{n, p};
  pt.insert(pt.end(), r.begin(), r.end());
  return f(pt);
}

std::int64_t br_value(const MonomialModule& e, const MonomialModule& relations, int n, int q) {
  BuchsbaumRimFunction f(relations, {e});
  return f({n, q});
}

// -------------------------------------------------------------- LengthTable

std::vector<GridPoint> GridSpec::points() const {
  std::vector<GridPoint> out;
  for (const auto& [lo, hi] : ranges) {
    if (lo > hi) return out;
  }
  GridPoint cur;
  std::function<void(std::size_t)> rec = [&](std::size_t axis) {
    if (axis == ranges.size()) {
      out.push_back(cur);
      return;
    }
    for (int v = ranges[axis].first; v <= ranges[axis].second; ++v) {
      cur.push_back(v);
      rec(axis + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t GridSpec::cardinality() const {
  std::size_t n = 1;
  for (const auto& [lo, hi] : ranges) {
    if (lo > hi) return 0;
    n *= static_cast<std::size_t>(hi - lo + 1);
  }
  return n;
}

LengthTable fill_table(const GridFunction& f, const GridSpec& grid, int threads) {
  if (static_cast<int>(grid.ranges.size()) != f.axes()) {
    throw Error(ErrorKind::InvalidArgument, "grid arity does not match the function");
  }
  LengthTable table;
  table.axis_names = f.axis_names();
  table.grid = grid;
  auto pts = grid.points();
  for (const auto& pt : pts) table.cached.push_back(f.is_cached(pt));
  f.prefetch(pts, threads);
  for (const auto& pt : pts) table.cells.emplace_back(pt, f(pt));
  return table;
}

}  // namespace mixmult

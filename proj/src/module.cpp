#include "mixmult/module.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <map>
#include <set>

namespace mixmult {

namespace {

void check_arity(const RingContext& ctx, const BiMonomial& m) {
  for (int i = 0; i < kMaxVars; ++i) {
    if (m.x[i] < 0 || m.t[i] < 0) {
      throw Error(ErrorKind::InvalidArgument, "negative exponent");
    }
    if ((i >= ctx.d && m.x[i] != 0) || (i >= ctx.rank && m.t[i] != 0)) {
      throw Error(ErrorKind::ArityError, "exponent outside ring variables");
    }
  }
}

std::int64_t total_degree(const BiMonomial& m) { return m.xdegree() + m.tdegree(); }

std::vector<BiMonomial> antichain(std::vector<BiMonomial> gens, ModuleMode mode) {
  std::sort(gens.begin(), gens.end(), [](const BiMonomial& a, const BiMonomial& b) {
    auto da = total_degree(a), db = total_degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<BiMonomial> kept;
  for (const auto& g : gens) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const BiMonomial& k) {
      return mode_divides(mode, k, g);
    });
    if (!redundant) kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

void require_same(const MonomialModule& u, const MonomialModule& v) {
  if (!(u.ctx() == v.ctx())) throw Error(ErrorKind::ModeMismatch, "ring mismatch");
  if (u.mode() != v.mode()) throw Error(ErrorKind::ModeMismatch, "mode mismatch");
  if (u.mode() == ModuleMode::Slice && u.degree() != v.degree()) {
    throw Error(ErrorKind::ModeMismatch, "slice degree mismatch");
  }
}

}  // namespace

bool mode_divides(ModuleMode mode, const BiMonomial& a, const BiMonomial& b) {
  if (mode == ModuleMode::Slice) return a.t == b.t && leq(a.x, b.x);
  return divides(a, b);
}

MonomialModule minimalize(const RingContext& ctx, std::vector<BiMonomial> gens,
                          ModuleMode mode, int degree) {
  for (const auto& g : gens) {
    check_arity(ctx, g);
    if (mode == ModuleMode::Slice && g.tdegree() != degree) {
      throw Error(ErrorKind::MixedSliceDegrees,
                  "slice generator " + to_string(g, ctx) + " has T-degree " +
                      std::to_string(g.tdegree()) + ", expected " +
                      std::to_string(degree));
    }
  }
  return mode == ModuleMode::Slice ? MonomialModule::slice(ctx, degree, std::move(gens))
                                   : MonomialModule::ideal(ctx, std::move(gens));
}

MonomialModule MonomialModule::ideal(const RingContext& ctx, std::vector<BiMonomial> gens) {
  for (const auto& g : gens) check_arity(ctx, g);
  MonomialModule m;
  m.ctx_ = ctx;
  m.mode_ = ModuleMode::Ideal;
  m.gens_ = antichain(std::move(gens), ModuleMode::Ideal);
  return m;
}

MonomialModule MonomialModule::slice(const RingContext& ctx, int degree,
                                     std::vector<BiMonomial> gens) {
  if (degree < 0) throw Error(ErrorKind::DegreeMismatch, "negative slice degree");
  for (const auto& g : gens) {
    check_arity(ctx, g);
    if (g.tdegree() != degree) {
      throw Error(ErrorKind::MixedSliceDegrees, "slice generator of wrong T-degree");
    }
  }
  MonomialModule m;
  m.ctx_ = ctx;
  m.mode_ = ModuleMode::Slice;
  m.degree_ = degree;
  m.gens_ = antichain(std::move(gens), ModuleMode::Slice);
  return m;
}

MonomialModule MonomialModule::unit_ideal(const RingContext& ctx) {
  return ideal(ctx, {BiMonomial{}});
}

MonomialModule MonomialModule::zero_ideal(const RingContext& ctx) { return ideal(ctx, {}); }

MonomialModule MonomialModule::full_slice(const RingContext& ctx, int degree) {
  std::vector<BiMonomial> gens;
  // Enumerate T-exponent vectors of the given degree.
  std::vector<int> e(ctx.rank, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == ctx.rank - 1) {
      BiMonomial m;
      for (int j = 0; j < ctx.rank - 1; ++j) m.t[j] = e[j];
      m.t[var] = left;
      gens.push_back(m);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[var] = a;
      rec(var + 1, left - a);
    }
  };
  rec(0, degree);
  return slice(ctx, degree, std::move(gens));
}

bool MonomialModule::is_unit() const {
  return mode_ == ModuleMode::Ideal && gens_.size() == 1 && total_degree(gens_[0]) == 0;
}

bool contains(const MonomialModule& u, const BiMonomial& m) {
  if (u.mode() == ModuleMode::Slice && m.tdegree() != u.degree()) {
    throw Error(ErrorKind::DegreeMismatch, "monomial not in slice degree");
  }
  return std::any_of(u.gens().begin(), u.gens().end(),
                     [&](const BiMonomial& g) { return mode_divides(u.mode(), g, m); });
}

bool contains(const MonomialModule& u, const MonomialModule& v) {
  require_same(u, v);
  return std::all_of(v.gens().begin(), v.gens().end(),
                     [&](const BiMonomial& g) { return contains(u, g); });
}

MonomialModule sum(const MonomialModule& u, const MonomialModule& v) {
  require_same(u, v);
  auto all = u.gens();
  all.insert(all.end(), v.gens().begin(), v.gens().end());
  return u.mode() == ModuleMode::Slice ? MonomialModule::slice(u.ctx(), u.degree(), all)
                                       : MonomialModule::ideal(u.ctx(), all);
}

MonomialModule product(const MonomialModule& u, const MonomialModule& v) {
  if (!(u.ctx() == v.ctx()) || u.mode() != v.mode()) {
    throw Error(ErrorKind::ModeMismatch, "product needs two ideals or two slices");
  }
  std::vector<BiMonomial> all;
  all.reserve(u.gens().size() * v.gens().size());
  for (const auto& a : u.gens()) {
    for (const auto& b : v.gens()) all.push_back(multiply(a, b));
  }
  return u.mode() == ModuleMode::Slice
             ? MonomialModule::slice(u.ctx(), u.degree() + v.degree(), std::move(all))
             : MonomialModule::ideal(u.ctx(), std::move(all));
}

MonomialModule intersect(const MonomialModule& u, const MonomialModule& v) {
  require_same(u, v);
  std::vector<BiMonomial> all;
  for (const auto& a : u.gens()) {
    for (const auto& b : v.gens()) {
      if (u.mode() == ModuleMode::Slice && a.t != b.t) continue;
      all.push_back(lcm(a, b));
    }
  }
  return u.mode() == ModuleMode::Slice
             ? MonomialModule::slice(u.ctx(), u.degree(), std::move(all))
             : MonomialModule::ideal(u.ctx(), std::move(all));
}

MonomialModule colon(const MonomialModule& u, const BiMonomial& m) {
  check_arity(u.ctx(), m);
  std::vector<BiMonomial> q;
  if (u.mode() == ModuleMode::Ideal) {
    for (const auto& g : u.gens()) q.push_back({monus(g.x, m.x), monus(g.t, m.t)});
    return MonomialModule::ideal(u.ctx(), std::move(q));
  }
  const int k = u.degree() - static_cast<int>(m.tdegree());
  if (k < 0) throw Error(ErrorKind::DegreeMismatch, "colon by a monomial of larger T-degree");
  for (const auto& g : u.gens()) {
    if (!leq(m.t, g.t)) continue;
    BiMonomial h;
    h.x = monus(g.x, m.x);
    for (int j = 0; j < kMaxVars; ++j) h.t[j] = g.t[j] - m.t[j];
    q.push_back(h);
  }
  return MonomialModule::slice(u.ctx(), k, std::move(q));
}

MonomialModule saturate(const MonomialModule& u, const MonomialModule& w) {
  if (w.mode() != ModuleMode::Ideal || u.mode() != ModuleMode::Ideal) {
    throw Error(ErrorKind::ModeMismatch, "saturation is defined for ideals");
  }
  // U : w^infinity is generated by the generators of U with the support of
  // w erased; U : W^infinity is the intersection over generators of W, and
  // only the support of each generator matters.
  std::set<std::pair<ExpVec, ExpVec>> supports;
  for (const auto& g : w.gens()) {
    std::pair<ExpVec, ExpVec> s{};
    for (int i = 0; i < kMaxVars; ++i) {
      s.first[i] = g.x[i] > 0;
      s.second[i] = g.t[i] > 0;
    }
    supports.insert(s);
  }
  if (supports.empty()) return MonomialModule::unit_ideal(u.ctx());
  std::optional<MonomialModule> result;
  for (const auto& [sx, st] : supports) {
    std::vector<BiMonomial> gens;
    for (auto g : u.gens()) {
      for (int i = 0; i < kMaxVars; ++i) {
        if (sx[i]) g.x[i] = 0;
        if (st[i]) g.t[i] = 0;
      }
      gens.push_back(g);
    }
    auto part = MonomialModule::ideal(u.ctx(), std::move(gens));
    result = result ? intersect(*result, part) : part;
  }
  return *result;
}

int krull_dim(const MonomialModule& b) {
  if (b.mode() != ModuleMode::Ideal) throw Error(ErrorKind::ModeMismatch, "krull_dim needs an ideal");
  const auto& ctx = b.ctx();
  const int n = ctx.nvars();
  std::vector<unsigned> supports;
  for (const auto& g : b.gens()) {
    unsigned s = 0;
    for (int i = 0; i < ctx.d; ++i) {
      if (g.x[i] > 0) s |= 1u << i;
    }
    for (int j = 0; j < ctx.rank; ++j) {
      if (g.t[j] > 0) s |= 1u << (ctx.d + j);
    }
    if (s == 0) return -1;
    supports.push_back(s);
  }
  int best = 0;
  for (unsigned set = 0; set < (1u << n); ++set) {
    int size = std::popcount(set);
    if (size <= best) continue;
    bool free = std::none_of(supports.begin(), supports.end(),
                             [&](unsigned s) { return (s & set) == s; });
    if (free) best = size;
  }
  return best;
}

MonomialModule irrelevant_ideal(const RingContext& ctx) {
  std::vector<BiMonomial> gens;
  for (int j = 0; j < ctx.rank; ++j) gens.push_back(term(ExpVec{}, j));
  return MonomialModule::ideal(ctx, std::move(gens));
}

int proj_dim(const MonomialModule& b) {
  int k = krull_dim(saturate(b, irrelevant_ideal(b.ctx())));
  return std::max(k - 1, -1);
}

LengthResult length_between(const MonomialModule& v, const MonomialModule& u, int kmax) {
  if (u.mode() != ModuleMode::Slice) {
    throw Error(ErrorKind::ModeMismatch, "length_between works on slices");
  }
  require_same(u, v);
  if (!contains(u, v)) throw Error(ErrorKind::NotContained, "V is not contained in U");
  std::map<ExpVec, std::pair<std::vector<ExpVec>, std::vector<ExpVec>>> parts;
  for (const auto& g : u.gens()) parts[g.t].first.push_back(g.x);
  for (const auto& g : v.gens()) parts[g.t].second.push_back(g.x);
  LengthResult res;
  for (auto& [t, uv] : parts) {
    auto ui = XIdeal::from_gens(uv.first);
    auto vi = XIdeal::from_gens(uv.second);
    auto c = count_difference(ui, vi, u.ctx().d);
    if (!c.finite) {
      res.status = LengthStatus::Infinite;
      res.value = 0;
      res.certificate = -1;
      return res;
    }
    res.value += c.count;
    if (c.count > 0) {
      std::int64_t min_deg = INT64_MAX;
      for (const auto& g : ui.gens()) min_deg = std::min(min_deg, degree(g));
      res.certificate = std::max(res.certificate, c.max_degree - min_deg + 1);
    }
  }
  if (res.certificate > kmax) res.status = LengthStatus::KMaxExceeded;
  return res;
}

}  // namespace mixmult

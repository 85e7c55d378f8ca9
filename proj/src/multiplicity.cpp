#include "mixmult/multiplicity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mixmult {

int MultiIndex::total() const { return j + k0 + std::accumulate(k.begin(), k.end(), 0); }

std::vector<int> MultiIndex::mixed_order() const {
  std::vector<int> o{k0, j};
  o.insert(o.end(), k.begin(), k.end());
  return o;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << "j=" << j << " k0=" << k0 << " k=[";
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ']';
  return os.str();
}

namespace {

// All vectors of `len` naturals summing to `total`, lexicographically decreasing.
void compositions(int len, int total, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (len == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (len == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = total; a >= 0; --a) {
    cur.push_back(a);
    compositions(len - 1, total - a, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int len, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(len, total, cur, out);
  return out;
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Offsets c <= order with signed weights (-1)^{|order|-|c|} prod binom(order_i, c_i).
std::vector<std::pair<GridPoint, std::int64_t>> stencil(const std::vector<int>& order) {
  std::vector<std::pair<GridPoint, std::int64_t>> out{{GridPoint{}, 1}};
  for (int o : order) {
    std::vector<std::pair<GridPoint, std::int64_t>> next;
    for (const auto& [pt, w] : out) {
      for (int c = 0; c <= o; ++c) {
        auto p = pt;
        p.push_back(c);
        const std::int64_t sign = ((o - c) % 2 == 0) ? 1 : -1;
        next.emplace_back(std::move(p), w * sign * binomial(o, c));
      }
    }
    out = std::move(next);
  }
  return out;
}

GridPoint offset(const GridPoint& a, const GridPoint& b) {
  GridPoint r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<GridPoint> shifts(int axes, int window) {
  GridSpec g;
  g.ranges.assign(static_cast<std::size_t>(axes), {0, window - 1});
  return g.points();
}

void check_order(const GridFunction& f, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != f.axes()) {
    throw Error(ErrorKind::InvalidArgument, "difference order has wrong arity");
  }
  for (int o : order) {
    if (o < 0) throw Error(ErrorKind::InvalidArgument, "negative difference order");
  }
}

GridPoint default_base(int axes, int degree, const StabilizationPolicy& policy) {
  if (!policy.base.empty()) {
    if (static_cast<int>(policy.base.size()) != axes) {
      throw Error(ErrorKind::InvalidArgument, "base has wrong arity");
    }
    return policy.base;
  }
  if (policy.uniform_base > 0) return GridPoint(static_cast<std::size_t>(axes), policy.uniform_base);
  return GridPoint(static_cast<std::size_t>(axes), std::max(degree, 0) + 2);
}

GridPoint doubled(const GridPoint& b) {
  GridPoint r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = std::max(2 * b[i], b[i] + 1);
  return r;
}

// Prefetches every cell needed by the given orders at all window shifts.
void prefetch_window(const GridFunction& f, const std::vector<std::vector<int>>& orders,
                     const GridPoint& base, int window, int threads) {
  std::set<GridPoint> cells;
  const auto sh = shifts(f.axes(), window);
  for (const auto& order : orders) {
    const auto st = stencil(order);
    for (const auto& s : sh) {
      const auto at = offset(base, s);
      for (const auto& [c, w] : st) cells.insert(offset(at, c));
    }
  }
  f.prefetch(std::vector<GridPoint>(cells.begin(), cells.end()), threads);
}

bool all_vanish(const GridFunction& f, int order_total, const GridPoint& base,
                const StabilizationPolicy& policy) {
  const auto orders = compositions(f.axes(), order_total);
  prefetch_window(f, orders, base, policy.window, policy.threads);
  for (const auto& order : orders) {
    for (const auto& s : shifts(f.axes(), policy.window)) {
      if (finite_difference(f, order, offset(base, s)) != 0) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<MultiIndex> indices_of_total(int q, int degree) {
  std::vector<MultiIndex> out;
  for (const auto& c : compositions(q + 2, degree)) {
    MultiIndex idx;
    idx.k0 = c[0];
    idx.j = c[1];
    idx.k.assign(c.begin() + 2, c.end());
    out.push_back(std::move(idx));
  }
  return out;
}

std::int64_t finite_difference(const GridFunction& f, const std::vector<int>& order,
                               const GridPoint& base) {
  check_order(f, order);
  std::int64_t acc = 0;
  for (const auto& [c, w] : stencil(order)) acc += w * f(offset(base, c));
  return acc;
}

std::int64_t finite_difference(const LengthTable& t, const std::vector<int>& order,
                               const GridPoint& base) {
  if (order.size() != t.grid.ranges.size() || base.size() != order.size()) {
    throw Error(ErrorKind::InvalidArgument, "difference order has wrong arity");
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (base[i] < t.grid.ranges[i].first || base[i] + order[i] > t.grid.ranges[i].second) {
      throw Error(ErrorKind::GridTooSmall, "table does not cover the difference stencil");
    }
  }
  std::map<GridPoint, std::int64_t> values(t.cells.begin(), t.cells.end());
  std::int64_t acc = 0;
  for (const auto& [c, w] : stencil(order)) acc += w * values.at(offset(base, c));
  return acc;
}

Coefficient stabilized_difference(const GridFunction& f, const std::vector<int>& order,
                                  const GridPoint& base, const StabilizationPolicy& policy) {
  check_order(f, order);
  if (policy.window < 1 || policy.rounds < 1) {
    throw Error(ErrorKind::InvalidArgument, "window and rounds must be positive");
  }
  GridPoint b = base;
  const auto sh = shifts(f.axes(), policy.window);
  for (int round = 0; round < policy.rounds; ++round) {
    prefetch_window(f, {order}, b, policy.window, policy.threads);
    std::optional<std::int64_t> value;
    bool constant = true;
    for (const auto& s : sh) {
      const auto v = finite_difference(f, order, offset(b, s));
      if (!value) {
        value = v;
      } else if (*value != v) {
        constant = false;
        break;
      }
    }
    if (constant) {
      if (*value < 0) {
        throw Error(ErrorKind::UnstableWindow, "negative top-order difference");
      }
      return Coefficient{order, *value, Evidence{b, policy.window, round, sh.size()}};
    }
    b = doubled(b);
  }
  throw Error(ErrorKind::UnstableWindow, "difference not constant after doubling the base");
}

int dimension_D(const Setup& setup) {
  auto sat = setup.saturated_relations();
  if (sat.is_unit()) {
    throw Error(ErrorKind::TrivialModule, "M* is zero: the torsion ideal kills M");
  }
  return proj_dim(sat);
}

DegreeResult detect_degree(const GridFunction& f, int formula, const StabilizationPolicy& policy) {
  const int start = std::max(formula, 0);
  DegreeResult res;
  res.base = default_base(f.axes(), start, policy);
  int deg = start;
  if (all_vanish(f, deg + 1, res.base, policy)) {
    while (deg > 0 && all_vanish(f, deg, res.base, policy)) --deg;
  } else {
    do {
      ++deg;
      if (deg > start + 2) {
        throw Error(ErrorKind::UnstableWindow, "no degree up to formula+2 fits the window");
      }
    } while (!all_vanish(f, deg + 1, res.base, policy));
  }
  res.degree = deg;
  return res;
}

MultiplicityEntry mixed_multiplicity(const MixedLengthFunction& f, const MultiIndex& idx,
                                     int degree, const StabilizationPolicy& policy) {
  if (static_cast<int>(idx.k.size()) != f.setup().q()) {
    throw Error(ErrorKind::ArityError, "index has wrong number of r-orders");
  }
  if (idx.total() != degree) {
    throw Error(ErrorKind::DegreeMismatch, "index total " + std::to_string(idx.total()) +
                                               " differs from degree " + std::to_string(degree));
  }
  auto c = stabilized_difference(f, idx.mixed_order(), default_base(f.axes(), degree, policy),
                                 policy);
  return MultiplicityEntry{idx, c.value, c.evidence};
}

MultiplicityEntry mixed_multiplicity(const Setup& setup, const MultiIndex& idx,
                                     const StabilizationPolicy& policy) {
  MixedLengthFunction f(setup);
  f.set_kmax(policy.kmax);
  f.set_store(policy.store);
  const int formula = dimension_D(setup);
  const auto deg = detect_degree(f, formula, policy);
  return mixed_multiplicity(f, idx, deg.degree, policy);
}

MultiplicityReport mixed_multiplicities(const MixedLengthFunction& f,
                                        const StabilizationPolicy& policy) {
  MultiplicityReport rep;
  rep.d_formula = dimension_D(f.setup());
  rep.d_detected = detect_degree(f, rep.d_formula, policy).degree;
  if (rep.d_detected != rep.d_formula) {
    rep.warnings.push_back("detected degree " + std::to_string(rep.d_detected) +
                           " differs from the dimension formula " +
                           std::to_string(rep.d_formula));
  }
  for (const auto& idx : indices_of_total(f.setup().q(), rep.d_detected)) {
    rep.entries.push_back(mixed_multiplicity(f, idx, rep.d_detected, policy));
  }
  return rep;
}

BuchsbaumRimResult buchsbaum_rim(const BuchsbaumRimFunction& f, int j,
                                 const StabilizationPolicy& policy, std::optional<int> degree) {
  if (f.axes() != 2) throw Error(ErrorKind::ArityError, "expected a single module");
  if (j < 0) throw Error(ErrorKind::InvalidArgument, "negative j");
  BuchsbaumRimResult res;
  res.j = j;
  const int formula = proj_dim(f.relations());
  if (degree) {
    res.degree = *degree;
  } else {
    res.degree = detect_degree(f, formula, policy).degree;
    if (res.degree != formula) {
      res.warnings.push_back("detected degree " + std::to_string(res.degree) +
                             " differs from dim Supp M = " + std::to_string(formula));
    }
  }
  const std::vector<int> order{std::max(res.degree - j, 0), j};
  auto c = stabilized_difference(f, order, default_base(2, res.degree, policy), policy);
  res.value = c.value;
  res.evidence = c.evidence;
  return res;
}

BuchsbaumRimResult buchsbaum_rim(const MonomialModule& e, const MonomialModule& relations, int j,
                                 const StabilizationPolicy& policy, std::optional<int> degree) {
  BuchsbaumRimFunction f(relations, {e});
  f.set_kmax(policy.kmax);
  f.set_store(policy.store);
  return buchsbaum_rim(f, j, policy, degree);
}

HeightResult height_mod_ann(const Setup& setup) {
  const auto& b = setup.relations();
  const int whole = proj_dim(b);
  const int cut = proj_dim(sum(b, setup.torsion_ideal()));
  return HeightResult{whole - cut, cut < 0};
}

}  // namespace mixmult

#include "mixmult/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace mixmult {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MixedSliceDegrees: return "MixedSliceDegrees";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::KMaxExceeded: return "KMaxExceeded";
    case ErrorKind::Infinite: return "Infinite";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::UnstableWindow: return "UnstableWindow";
    case ErrorKind::TrivialModule: return "TrivialModule";
    case ErrorKind::HeightPreconditionFailed: return "HeightPreconditionFailed";
    case ErrorKind::ColengthError: return "ColengthError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::UnknownReference: return "UnknownReference";
  }
  return "Unknown";
}

RingContext RingContext::make(int d, int rank) {
  if (d < 1 || rank < 1 || d > kMaxVars || rank > kMaxVars) {
    throw Error(ErrorKind::InvalidArgument,
                "ring needs 1 <= d, rank <= " + std::to_string(kMaxVars));
  }
  return RingContext{d, rank};
}

std::string RingContext::x_name(int i) const {
  if (d <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

std::string RingContext::t_name(int j) const {
  if (rank == 1) return "T";
  return "T" + std::to_string(j + 1);
}

bool leq(const ExpVec& a, const ExpVec& b) {
  for (int i = 0; i < kMaxVars; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

ExpVec add(const ExpVec& a, const ExpVec& b) {
  ExpVec r{};
  for (int i = 0; i < kMaxVars; ++i) {
    r[i] = a[i] + b[i];
    if (r[i] > kMaxExponent) throw Error(ErrorKind::Overflow, "exponent overflow");
  }
  return r;
}

ExpVec lcm(const ExpVec& a, const ExpVec& b) {
  ExpVec r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

ExpVec gcd(const ExpVec& a, const ExpVec& b) {
  ExpVec r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

ExpVec monus(const ExpVec& a, const ExpVec& b) {
  ExpVec r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i] - b[i], 0);
  return r;
}

std::int64_t degree(const ExpVec& a) {
  std::int64_t s = 0;
  for (auto e : a) s += e;
  return s;
}

ExpVec unit_vector(int i, Exponent e) {
  ExpVec r{};
  r[i] = e;
  return r;
}

BiMonomial term(const ExpVec& x, int component) {
  BiMonomial m;
  m.x = x;
  m.t[component] = 1;
  return m;
}

BiMonomial multiply(const BiMonomial& a, const BiMonomial& b) {
  return BiMonomial{add(a.x, b.x), add(a.t, b.t)};
}

bool divides(const BiMonomial& a, const BiMonomial& b) {
  return leq(a.x, b.x) && leq(a.t, b.t);
}

BiMonomial lcm(const BiMonomial& a, const BiMonomial& b) {
  return BiMonomial{lcm(a.x, b.x), lcm(a.t, b.t)};
}

namespace {

void append_power(std::ostringstream& os, const std::string& name, Exponent e,
                  bool& first) {
  if (e == 0) return;
  if (!first) os << '*';
  first = false;
  os << name;
  if (e > 1) os << '^' << e;
}

}  // namespace

std::string to_string(const BiMonomial& m, const RingContext& ctx) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < ctx.d; ++i) append_power(os, ctx.x_name(i), m.x[i], first);
  for (int j = 0; j < ctx.rank; ++j) append_power(os, ctx.t_name(j), m.t[j], first);
  if (first) os << '1';
  return os.str();
}

std::string to_string(const ExpVec& x, int nvars) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < nvars; ++i) {
    if (i) os << ',';
    os << x[i];
  }
  os << ']';
  return os.str();
}

std::vector<ExpVec> minimal_antichain(std::vector<ExpVec> gens) {
  // Sorting by degree lets each element be tested only against kept ones.
  std::sort(gens.begin(), gens.end(), [](const ExpVec& a, const ExpVec& b) {
    auto da = degree(a), db = degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ExpVec> kept;
  kept.reserve(gens.size());
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& k : kept) {
      if (leq(k, g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

XIdeal XIdeal::unit() {
  XIdeal u;
  u.gens_.push_back(ExpVec{});
  return u;
}

XIdeal XIdeal::from_gens(std::vector<ExpVec> gens) {
  XIdeal r;
  r.gens_ = minimal_antichain(std::move(gens));
  return r;
}

bool XIdeal::is_unit() const {
  return gens_.size() == 1 && degree(gens_[0]) == 0;
}

bool XIdeal::contains(const ExpVec& m) const {
  for (const auto& g : gens_) {
    if (leq(g, m)) return true;
  }
  return false;
}

bool XIdeal::contains(const XIdeal& other) const {
  for (const auto& g : other.gens_) {
    if (!contains(g)) return false;
  }
  return true;
}

XIdeal XIdeal::operator+(const XIdeal& other) const {
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  std::vector<ExpVec> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return from_gens(std::move(all));
}

XIdeal XIdeal::operator*(const XIdeal& other) const {
  std::vector<ExpVec> all;
  all.reserve(gens_.size() * other.gens_.size());
  for (const auto& a : gens_) {
    for (const auto& b : other.gens_) all.push_back(add(a, b));
  }
  return from_gens(std::move(all));
}

XIdeal XIdeal::shifted(const ExpVec& m) const {
  XIdeal r;
  r.gens_.reserve(gens_.size());
  for (const auto& g : gens_) r.gens_.push_back(add(g, m));
  std::sort(r.gens_.begin(), r.gens_.end());
  return r;
}

XIdeal XIdeal::colon(const ExpVec& m) const {
  std::vector<ExpVec> q;
  q.reserve(gens_.size());
  for (const auto& g : gens_) q.push_back(monus(g, m));
  return from_gens(std::move(q));
}

XIdeal XIdeal::intersect(const XIdeal& other) const {
  std::vector<ExpVec> all;
  all.reserve(gens_.size() * other.gens_.size());
  for (const auto& a : gens_) {
    for (const auto& b : other.gens_) all.push_back(lcm(a, b));
  }
  return from_gens(std::move(all));
}

namespace {

// Generators with coordinate `var` at most `level`, with that coordinate
// erased: the x_var^level slice of the ideal viewed in one fewer variable.
std::vector<ExpVec> slice_at(const std::vector<ExpVec>& gens, int var,
                             Exponent level) {
  std::vector<ExpVec> out;
  for (const auto& g : gens) {
    if (g[var] <= level) {
      ExpVec h = g;
      h[var] = 0;
      out.push_back(h);
    }
  }
  return minimal_antichain(std::move(out));
}

bool has_unit(const std::vector<ExpVec>& gens) {
  for (const auto& g : gens) {
    if (degree(g) == 0) return true;
  }
  return false;
}

CountResult count_rec(const std::vector<ExpVec>& u, const std::vector<ExpVec>& w,
                      int nvars) {
  CountResult res;
  if (u.empty() || has_unit(w)) return res;
  if (nvars == 0) {
    // Only the constant monomial remains; u is nonempty so it contains it.
    res.count = 1;
    res.max_degree = 0;
    return res;
  }
  const int var = nvars - 1;
  std::vector<Exponent> breaks;
  for (const auto& g : u) breaks.push_back(g[var]);
  for (const auto& g : w) breaks.push_back(g[var]);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const Exponent lo = breaks[i];
    auto us = slice_at(u, var, lo);
    auto ws = slice_at(w, var, lo);
    CountResult sub = count_rec(us, ws, nvars - 1);
    if (!sub.finite) {
      res.finite = false;
      return res;
    }
    if (sub.count == 0) continue;
    if (i + 1 == breaks.size()) {
      res.finite = false;
      return res;
    }
    const Exponent hi = breaks[i + 1];
    const std::int64_t len = hi - lo;
    if (sub.count > (INT64_MAX / 4) / len) {
      throw Error(ErrorKind::Overflow, "monomial count overflow");
    }
    res.count += sub.count * len;
    res.max_degree = std::max(res.max_degree, sub.max_degree + hi - 1);
  }
  return res;
}

}  // namespace

CountResult count_difference(const XIdeal& u, const XIdeal& w, int nvars) {
  return count_rec(u.gens(), w.gens(), nvars);
}

CountResult count_standard(const XIdeal& w, int nvars) {
  return count_difference(XIdeal::unit(), w, nvars);
}

}  // namespace mixmult

#pragma once

// Corpus of small setups with expected values from the brute-force oracle.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle/oracle.hpp"

namespace oracle {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCorpusSchema = "mixmult-corpus/1";

/// Modules in job syntax: "[2,0] [0,3]" for A, "[1,0]@1 [0,1]@1" for F, E_i.
struct CaseText {
  std::string name;
  int d = 2;
  int p = 1;
  std::string a;
  std::string f;  // empty: maximal ideal times R^p
  std::vector<std::string> e;
};

inline std::vector<int> parse_vec(const std::string& s) {
  std::vector<int> v;
  std::string body = s.substr(1, s.find(']') - 1);
  std::stringstream ss(body);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stoi(tok));
  return v;
}

inline Gens parse_x(const Ring& R, const std::string& s) {
  Gens out;
  std::istringstream is(s);
  for (std::string tok; is >> tok;) {
    Mono m = one(R);
    const auto x = parse_vec(tok);
    for (int i = 0; i < R.d; ++i) m[static_cast<std::size_t>(i)] = x.at(static_cast<std::size_t>(i));
    out.push_back(m);
  }
  return out;
}

inline Gens parse_slice(const Ring& R, const std::string& s) {
  Gens out;
  std::istringstream is(s);
  for (std::string tok; is >> tok;) {
    const auto at = tok.find('@');
    out.push_back(term(R, parse_vec(tok.substr(0, at)), std::stoi(tok.substr(at + 1)) - 1));
  }
  return out;
}

inline Setup to_setup(const CaseText& c) {
  Setup S;
  S.ring = Ring{c.d, c.p};
  S.a = parse_x(S.ring, c.a);
  if (c.f.empty()) {
    for (int comp = 0; comp < c.p; ++comp) {
      for (int i = 0; i < c.d; ++i) {
        std::vector<int> x(static_cast<std::size_t>(c.d), 0);
        x[static_cast<std::size_t>(i)] = 1;
        S.j.push_back(term(S.ring, x, comp));
      }
    }
  } else {
    S.j = parse_slice(S.ring, c.f);
  }
  for (const auto& e : c.e) S.i.push_back(parse_slice(S.ring, e));
  return S;
}

inline Json case_json(const CaseText& c) {
  Json e = Json::array();
  for (const auto& s : c.e) e.push_back(s);
  return Json{{"name", c.name}, {"d", c.d}, {"p", c.p}, {"A", c.a},
              {"F", c.f.empty() ? Json(nullptr) : Json(c.f)}, {"E", e}};
}

inline CaseText case_from_json(const Json& j) {
  CaseText c;
  c.name = j.at("name").get<std::string>();
  c.d = j.at("d").get<int>();
  c.p = j.at("p").get<int>();
  c.a = j.at("A").get<std::string>();
  if (!j.at("F").is_null()) c.f = j.at("F").get<std::string>();
  for (const auto& e : j.at("E")) c.e.push_back(e.get<std::string>());
  return c;
}

struct Expected {
  int degree = 0;
  std::vector<int> base;
  /// (j, k0, k..., value)
  std::vector<std::vector<std::int64_t>> entries;
  std::vector<std::pair<std::vector<int>, std::int64_t>> samples;
};

/// Degree and top coefficients of h, found at the least base (in steps of
/// two from 3) where the degree and every coefficient agree with the
/// values at the base shifted by one on each axis.
inline Expected expected_values(const Setup& S, int max_base = 11) {
  const int q = static_cast<int>(S.i.size());
  const int axes = 2 + q;
  Fn f = memo([&S](const std::vector<int>& pt) {
    return h(S, pt[0], pt[1], std::vector<int>(pt.begin() + 2, pt.end()));
  });
  const int cap = S.ring.d + S.ring.p + q;
  for (int b = 3; b <= max_base; b += 2) {
    std::vector<int> base(static_cast<std::size_t>(axes), b);
    int D = 0;
    try {
      D = degree(f, axes, base, cap);
    } catch (const NotFinite&) {
      continue;
    }
    Expected ex;
    ex.degree = D;
    ex.base = base;
    bool stable = true;
    for (const auto& c : compositions(axes, D)) {
      const auto v = difference(f, c, base);
      for (int shift = 0; shift < axes && stable; ++shift) {
        auto at = base;
        at[static_cast<std::size_t>(shift)] += 1;
        if (difference(f, c, at) != v) stable = false;
      }
      // layout (n, p, r) = (k0, j, k)
      std::vector<std::int64_t> row{c[1], c[0]};
      for (int i = 0; i < q; ++i) row.push_back(c[static_cast<std::size_t>(2 + i)]);
      row.push_back(v);
      ex.entries.push_back(row);
    }
    if (!stable) continue;
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> pt(static_cast<std::size_t>(axes), 1);
      pt[0] = n;
      pt[1] = 0;
      ex.samples.emplace_back(pt, f(pt));
    }
    return ex;
  }
  throw NotFinite("coefficients did not settle below the base cap");
}

inline Json expected_json(const Expected& ex, int q) {
  Json e = Json::array();
  for (const auto& row : ex.entries) {
    std::vector<std::int64_t> k(row.begin() + 2, row.begin() + 2 + q);
    e.push_back(Json{{"j", row[0]}, {"k0", row[1]}, {"k", k}, {"value", row.back()}});
  }
  Json samples = Json::array();
  for (const auto& [pt, v] : ex.samples) samples.push_back(Json{{"point", pt}, {"value", v}});
  return Json{{"D", ex.degree}, {"base", ex.base}, {"e", e}, {"h", samples}};
}

/// Random small setups: d <= 3, p <= 2, q <= 2, exponents <= 4.  J is
/// the maximal ideal times R^p or a random module of finite colength.
inline std::vector<CaseText> random_cases(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto vec = [&](int d, int maxexp) {
    std::string s = "[";
    for (int i = 0; i < d; ++i) s += (i ? "," : "") + std::to_string(uni(0, maxexp));
    return s + "]";
  };
  // Pure powers in every variable and component, plus a few mixed terms.
  auto colength_module = [&](int d, int p, int maxexp) {
    std::string s;
    for (int c = 1; c <= p; ++c) {
      for (int i = 0; i < d; ++i) {
        std::string v = "[";
        for (int k = 0; k < d; ++k) v += (k ? "," : "") + std::to_string(k == i ? uni(1, maxexp) : 0);
        s += (s.empty() ? "" : " ") + v + "]@" + std::to_string(c);
      }
      for (int extra = uni(0, 1); extra > 0; --extra) s += " " + vec(d, 2) + "@" + std::to_string(c);
    }
    return s;
  };
  std::vector<CaseText> out;
  for (int n = 0; n < count; ++n) {
    CaseText c;
    c.d = uni(1, 3);
    c.p = c.d == 3 ? 1 : uni(1, 2);
    const int q = uni(0, c.d == 3 ? 1 : 2);
    c.name = "random-" + std::to_string(seed) + "-" + std::to_string(n);
    if (uni(0, 2) == 0) c.a = vec(c.d, 4);
    if (uni(0, 1) == 0) c.f = colength_module(c.d, c.p, 2);
    for (int i = 0; i < q; ++i) {
      std::string e;
      const int gens = uni(1, 3);
      for (int g = 0; g < gens; ++g) {
        e += (e.empty() ? "" : " ") + vec(c.d, 3) + "@" + std::to_string(uni(1, c.p));
      }
      c.e.push_back(e);
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace oracle

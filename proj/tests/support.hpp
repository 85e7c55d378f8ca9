#pragma once

#include <fstream>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "mixmult/job.hpp"
#include "oracle/corpus.hpp"

namespace support {

using namespace mixmult;

inline ExpVec ev(std::initializer_list<int> v) {
  ExpVec x{};
  int i = 0;
  for (int e : v) x[static_cast<std::size_t>(i++)] = e;
  return x;
}

inline BiMonomial bm(std::initializer_list<int> x, std::initializer_list<int> t = {}) {
  return BiMonomial{ev(x), ev(t)};
}

/// x^a T_c with a zero-based component.
inline BiMonomial xt(std::initializer_list<int> x, int c) { return term(ev(x), c); }

inline oracle::Mono to_mono(const BiMonomial& m, const RingContext& ctx) {
  oracle::Mono out;
  for (int i = 0; i < ctx.d; ++i) out.push_back(m.x[static_cast<std::size_t>(i)]);
  for (int j = 0; j < ctx.rank; ++j) out.push_back(m.t[static_cast<std::size_t>(j)]);
  return out;
}

inline oracle::Gens to_gens(const MonomialModule& u) {
  oracle::Gens g;
  for (const auto& m : u.gens()) g.push_back(to_mono(m, u.ctx()));
  return g;
}

inline JobSpec job_of(int d, int p, const std::string& a, const std::string& f,
                      const std::vector<std::string>& e) {
  JobSpec j;
  j.d = d;
  j.p = p;
  std::istringstream is(a);
  for (std::string t; is >> t;) j.a.push_back(parse_exponents(t, d));
  if (!f.empty()) j.f = parse_terms(f, d, p);
  for (const auto& s : e) j.e.push_back(parse_terms(s, d, p));
  return j;
}

/// Setup from job-syntax strings; empty F means the maximal ideal times R^p.
inline Setup make_setup(int d, int p, const std::string& a, const std::string& f,
                        const std::vector<std::string>& e) {
  return job_of(d, p, a, f, e).setup();
}

inline std::vector<Candidate> cands(const Setup& s, const std::string& text) {
  return parse_candidates(text, s.ctx().d, s.ctx().rank, s.q());
}

inline Candidate cand(const Setup& s, const std::string& text) { return cands(s, text).at(0); }

inline oracle::Setup oracle_of(int d, int p, const std::string& a, const std::string& f,
                               const std::vector<std::string>& e) {
  oracle::CaseText c;
  c.d = d;
  c.p = p;
  c.a = a;
  c.f = f;
  c.e = e;
  return oracle::to_setup(c);
}

struct CorpusCase {
  oracle::CaseText text;
  oracle::Json expected;

  Setup setup() const { return make_setup(text.d, text.p, text.a, text.f, text.e); }
  JobSpec job() const { return job_of(text.d, text.p, text.a, text.f, text.e); }
};

inline std::string source_path(const std::string& rel) {
  return std::string(MIXMULT_SOURCE_DIR) + "/" + rel;
}

inline std::vector<CorpusCase> load_corpus() {
  std::ifstream in(source_path("corpus/corpus.json"));
  const auto j = oracle::Json::parse(in);
  std::vector<CorpusCase> out;
  for (const auto& c : j.at("cases")) out.push_back({oracle::case_from_json(c), c.at("expected")});
  return out;
}

/// Random ideal generators with the given number of x- and T-variables.
inline std::vector<BiMonomial> random_gens(std::mt19937_64& rng, const RingContext& ctx,
                                           int count, int maxexp) {
  std::uniform_int_distribution<int> e(0, maxexp);
  std::vector<BiMonomial> g;
  for (int k = 0; k < count; ++k) {
    BiMonomial m;
    for (int i = 0; i < ctx.d; ++i) m.x[static_cast<std::size_t>(i)] = e(rng);
    for (int j = 0; j < ctx.rank; ++j) m.t[static_cast<std::size_t>(j)] = e(rng);
    g.push_back(m);
  }
  return g;
}

/// Random generators of T-degree `k`.
inline std::vector<BiMonomial> random_slice_gens(std::mt19937_64& rng, const RingContext& ctx,
                                                 int k, int count, int maxexp) {
  std::uniform_int_distribution<int> e(0, maxexp);
  std::uniform_int_distribution<int> comp(0, ctx.rank - 1);
  std::vector<BiMonomial> g;
  for (int n = 0; n < count; ++n) {
    BiMonomial m;
    for (int i = 0; i < ctx.d; ++i) m.x[static_cast<std::size_t>(i)] = e(rng);
    for (int s = 0; s < k; ++s) m.t[static_cast<std::size_t>(comp(rng))] += 1;
    g.push_back(m);
  }
  return g;
}

/// Every monomial of G with total degree at most `deg`.
inline std::vector<BiMonomial> all_monomials(const RingContext& ctx, int deg) {
  std::vector<BiMonomial> out;
  const int n = ctx.nvars();
  for (int k = 0; k <= deg; ++k) {
    for (const auto& v : oracle::x_monomials(n, k)) {
      BiMonomial m;
      for (int i = 0; i < ctx.d; ++i) m.x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
      for (int j = 0; j < ctx.rank; ++j) m.t[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(ctx.d + j)];
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace support

#include <random>

#include "doctest.h"
#include "mixmult/multiplicity.hpp"
#include "support.hpp"

using namespace support;

namespace {

const char* kMaximal = "[1,0]@1 [0,1]@1";

Setup maximal_setup() { return make_setup(2, 1, "", "", {kMaximal}); }
Setup bhattacharya() { return make_setup(2, 1, "", "", {"[2,0]@1 [0,3]@1"}); }

MonomialModule slice1(const RingContext& ctx, std::vector<BiMonomial> g) {
  return MonomialModule::slice(ctx, 1, std::move(g));
}

}  // namespace

TEST_CASE("rees_piece") {
  const auto ctx = RingContext::make(2, 2);
  const auto e = slice1(ctx, {xt({1, 0}, 0), xt({0, 1}, 1)});
  CHECK(rees_piece(e, 2) ==
        MonomialModule::slice(ctx, 2, {bm({2, 0}, {2, 0}), bm({1, 1}, {1, 1}), bm({0, 2}, {0, 2})}));
  CHECK(rees_piece(e, 0) == MonomialModule::full_slice(ctx, 0));
  const auto k = RingContext::make(2, 1);
  CHECK(rees_piece(slice1(k, {xt({2, 0}, 0), xt({0, 3}, 0)}), 2) ==
        MonomialModule::slice(k, 2, {bm({4, 0}, {2}), bm({2, 3}, {2}), bm({0, 6}, {2})}));
}

TEST_CASE("power_product") {
  const auto s = bhattacharya();
  const auto [num, den] = power_product(s, 0, 0, {1});
  CHECK(num == MonomialModule::slice(s.ctx(), 1, {xt({2, 0}, 0), xt({0, 3}, 0)}));
  CHECK(num == den);

  const auto [n0, d0] = power_product(s, 0, 2, {0});
  CHECK(n0 == d0);
  CHECK(length_between(d0, n0).value == 0);

  const auto a = make_setup(2, 1, "[1,0]", "", {kMaximal});
  for (int n = 0; n <= 2; ++n) {
    const auto [u, v] = power_product(a, n, 1, {1});
    for (const auto& g : u.gens()) CHECK(g.x[0] == 0);
    for (const auto& g : v.gens()) CHECK(g.x[0] == 0);
    CHECK(contains(u, v));
  }
}

TEST_CASE("h_value") {
  const auto m = maximal_setup();
  for (int n = 0; n <= 6; ++n) {
    for (int p = 0; p <= 2; ++p) CHECK(h_value(m, n, p, {0}) == n * (n + 1) / 2);
  }
  const auto b = bhattacharya();
  for (int p = 0; p <= 3; ++p) {
    for (int r = 0; r <= 3; ++r) CHECK(h_value(b, 0, p, {r}) == 0);
  }
  for (int p = 0; p <= 2; ++p) CHECK(h_value(b, 1, p, {1}) == 2);
}

TEST_CASE("br_value closed forms") {
  const auto k = RingContext::make(2, 1);
  const auto m = slice1(k, {xt({1, 0}, 0), xt({0, 1}, 0)});
  const auto zero = MonomialModule::zero_ideal(k);
  for (int n = 0; n <= 5; ++n) {
    for (int q = 0; q <= 3; ++q) CHECK(br_value(m, zero, n, q) == n * (n + 1) / 2);
  }
  const auto k2 = RingContext::make(2, 2);
  const auto m2 = slice1(k2, {xt({1, 0}, 0), xt({0, 1}, 0), xt({1, 0}, 1), xt({0, 1}, 1)});
  const auto zero2 = MonomialModule::zero_ideal(k2);
  for (int n = 0; n <= 4; ++n) {
    for (int q = 0; q <= 3; ++q) CHECK(br_value(m2, zero2, n, q) == (n + q + 1) * n * (n + 1) / 2);
  }
  const auto free2 = MonomialModule::full_slice(k2, 1);
  for (int n = 0; n <= 3; ++n) CHECK(br_value(free2, zero2, n, 2) == 0);
}

TEST_CASE("br_value throws Infinite without finite colength") {
  const auto k = RingContext::make(2, 1);
  try {
    br_value(slice1(k, {xt({1, 0}, 0)}), MonomialModule::zero_ideal(k), 2, 0);
    FAIL("expected Infinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infinite);
  }
}

TEST_CASE("fill_table") {
  const MixedLengthFunction f(maximal_setup());
  const auto one = fill_table(f, GridSpec{{{3, 3}, {1, 1}, {0, 0}}});
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0].second == h_value(maximal_setup(), 3, 1, {0}));

  const auto t = fill_table(f, GridSpec{{{1, 4}, {0, 0}, {0, 0}}});
  std::vector<std::int64_t> values;
  for (const auto& [pt, v] : t.cells) values.push_back(v);
  CHECK(values == std::vector<std::int64_t>{1, 3, 6, 10});
  CHECK(t.axis_names == std::vector<std::string>{"n", "p", "r1"});

  const auto empty = fill_table(f, GridSpec{{{1, 0}, {0, 0}, {0, 0}}});
  CHECK(empty.cells.empty());
  CHECK(empty.grid.cardinality() == 0);
}

TEST_CASE("property: denominator lies in numerator") {
  for (const auto& c : load_corpus()) {
    const auto s = c.setup();
    std::vector<int> r(static_cast<std::size_t>(s.q()), 1);
    for (int n = 0; n <= 2; ++n) {
      for (int p = 0; p <= 1; ++p) {
        const auto [u, v] = power_product(s, n, p, r);
        CHECK_MESSAGE(contains(u, v), c.text.name);
      }
    }
  }
}

TEST_CASE("property: h is nondecreasing in n") {
  for (const auto& c : load_corpus()) {
    const MixedLengthFunction f(c.setup());
    std::vector<int> pt(static_cast<std::size_t>(f.axes()), 1);
    for (int p = 0; p <= 1; ++p) {
      pt[1] = p;
      std::int64_t prev = 0;
      for (int n = 0; n <= 5; ++n) {
        pt[0] = n;
        const auto v = f(pt);
        CHECK_MESSAGE(v >= prev, c.text.name);
        prev = v;
      }
    }
  }
}

TEST_CASE("property: h agrees with brute-force enumeration") {
  // total degree n + p + |r| at most 10, d + p at most 4
  int checked = 0;
  for (const auto& c : load_corpus()) {
    if (c.text.d + c.text.p > 4) continue;
    const auto s = c.setup();
    const auto o = oracle::to_setup(c.text);
    const int q = s.q();
    for (int n = 0; n <= 3; ++n) {
      for (int p = 0; p <= 2; ++p) {
        for (int r = 0; r <= 2; ++r) {
          if (n + p + q * r > 10) continue;
          const std::vector<int> rv(static_cast<std::size_t>(q), r);
          CHECK_MESSAGE(h_value(s, n, p, rv) == oracle::h(o, n, p, rv), c.text.name);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("property: br_value for an ideal is the colength of A + E^n") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const auto ctx = RingContext::make(d, 1);
    std::vector<BiMonomial> e;
    for (int i = 0; i < d; ++i) {
      ExpVec x{};
      x[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % 3);
      e.push_back(term(x, 0));
    }
    for (const auto& g : random_slice_gens(rng, ctx, 1, 1, 2)) e.push_back(g);
    const auto em = slice1(ctx, e);
    std::vector<BiMonomial> a;
    if (rng() % 2) a = random_gens(rng, ctx, 1, 3);
    for (auto& g : a) g.t = ExpVec{};
    const auto rel = MonomialModule::ideal(ctx, a);
    const oracle::Ring R{d, 1};
    oracle::Gens ag;
    for (const auto& g : a) ag.push_back(to_mono(g, ctx));
    for (int n = 1; n <= 3; ++n) {
      // colength of A + E^n in R, read in T-degree 0
      oracle::Gens en{oracle::one(R)};
      for (int k = 0; k < n; ++k) {
        oracle::Gens next;
        for (const auto& u : en) {
          for (const auto& g : e) {
            auto m = oracle::mul(u, to_mono(g, ctx));
            m[static_cast<std::size_t>(d)] = 0;
            next.push_back(m);
          }
        }
        en = oracle::minimal(next);
      }
      for (const auto& g : ag) en.push_back(g);
      const auto expected = oracle::count_between(R, 0, {oracle::one(R)}, en);
      for (int q = 0; q <= 2; ++q) CHECK(br_value(em, rel, n, q) == expected);
    }
  }
}

TEST_CASE("property: parallel and sequential fills agree") {
  const auto corpus = load_corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 4) {
    const auto s = corpus[i].setup();
    GridSpec g;
    g.ranges = {{0, 4}, {0, 2}};
    for (int k = 0; k < s.q(); ++k) g.ranges.emplace_back(0, 2);
    const MixedLengthFunction seq(s);
    const MixedLengthFunction par(s);
    const auto a = fill_table(seq, g, 1);
    const auto b = fill_table(par, g, 4);
    CHECK(a.cells == b.cells);
  }
}

#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace support;

namespace {

const RingContext k1 = RingContext::make(1, 1);
const RingContext k2 = RingContext::make(2, 1);
const RingContext k22 = RingContext::make(2, 2);

MonomialModule I(const RingContext& ctx, std::vector<BiMonomial> g) {
  return MonomialModule::ideal(ctx, std::move(g));
}

MonomialModule S(const RingContext& ctx, int k, std::vector<BiMonomial> g) {
  return MonomialModule::slice(ctx, k, std::move(g));
}

RingContext random_ctx(std::mt19937_64& rng, int max_total) {
  for (;;) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int p = 1 + static_cast<int>(rng() % 2);
    if (d + p <= max_total) return RingContext::make(d, p);
  }
}

// Height by brute force: the least size of a variable set meeting every
// generator's support.
int brute_height(const MonomialModule& b) {
  const int n = b.ctx().nvars();
  const auto gens = to_gens(b);
  if (gens.empty()) return 0;
  int best = n + 1;
  for (unsigned set = 0; set < (1u << n); ++set) {
    bool hits_all = true;
    for (const auto& g : gens) {
      bool hit = false;
      for (int i = 0; i < n; ++i) hit = hit || ((set >> i & 1u) && g[static_cast<std::size_t>(i)] > 0);
      hits_all = hits_all && hit;
    }
    if (hits_all) best = std::min(best, std::popcount(set));
  }
  return best;
}

}  // namespace

TEST_CASE("minimalize") {
  CHECK(minimalize(k1, {bm({2}), bm({3})}, ModuleMode::Ideal).gens() ==
        std::vector<BiMonomial>{bm({2})});
  CHECK(minimalize(k1, {}, ModuleMode::Ideal).is_zero());
  const auto ctx = RingContext::make(2, 2);
  const auto m = minimalize(ctx, {xt({1, 0}, 0), xt({2, 0}, 0), xt({0, 1}, 0)}, ModuleMode::Slice, 1);
  CHECK(m == S(ctx, 1, {xt({1, 0}, 0), xt({0, 1}, 0)}));
  // equal x-parts in different components are incomparable in a slice
  CHECK(S(ctx, 1, {xt({1, 0}, 0), xt({1, 0}, 1)}).gens().size() == 2);
}

TEST_CASE("slice generators must share a T-degree") {
  try {
    S(k2, 1, {xt({1, 0}, 0), bm({0, 1}, {2})});
    FAIL("expected MixedSliceDegrees");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedSliceDegrees);
  }
}

TEST_CASE("contains") {
  const auto u = I(k2, {bm({2, 0}), bm({0, 3})});
  CHECK(contains(u, bm({2, 1})));
  CHECK_FALSE(contains(u, bm({1, 2})));
  CHECK(contains(S(k2, 1, {xt({1, 0}, 0)}), xt({3, 0}, 0)));
}

TEST_CASE("sum and product") {
  const auto m = I(k2, {bm({1, 0}), bm({0, 1})});
  CHECK(product(m, m) == I(k2, {bm({2, 0}), bm({1, 1}), bm({0, 2})}));
  CHECK(product(S(k22, 1, {xt({1, 0}, 0)}), S(k22, 1, {xt({0, 1}, 1)})) ==
        S(k22, 2, {bm({1, 1}, {1, 1})}));
  CHECK(sum(I(k2, {bm({2, 0})}), I(k2, {bm({0, 1})})) == I(k2, {bm({2, 0}), bm({0, 1})}));
  CHECK_THROWS_AS(product(m, S(k2, 1, {xt({1, 0}, 0)})), Error);
}

TEST_CASE("intersect") {
  CHECK(intersect(I(k2, {bm({1, 0})}), I(k2, {bm({0, 1})})) == I(k2, {bm({1, 1})}));
  CHECK(intersect(S(k22, 1, {xt({2, 0}, 0), xt({0, 1}, 1)}), S(k22, 1, {xt({1, 0}, 0)})) ==
        S(k22, 1, {xt({2, 0}, 0)}));
  CHECK(intersect(I(k2, {bm({2, 0}), bm({0, 1})}), I(k2, {bm({1, 0}), bm({0, 2})})) ==
        I(k2, {bm({2, 0}), bm({1, 1}), bm({0, 2})}));
}

TEST_CASE("colon") {
  CHECK(colon(I(k2, {bm({2, 1}), bm({0, 3})}), bm({0, 1})) == I(k2, {bm({2, 0}), bm({0, 2})}));
  CHECK(colon(I(k2, {bm({0, 2})}), bm({1, 0})) == I(k2, {bm({0, 2})}));
  CHECK(colon(I(k2, {bm({2, 0}), bm({0, 1})}), bm({0, 1})).is_unit());
}

TEST_CASE("saturate") {
  CHECK(saturate(I(k2, {bm({1, 0})}), I(k2, {bm({1, 0})})).is_unit());
  CHECK(saturate(I(k2, {bm({0, 2})}), I(k2, {bm({1, 0})})) == I(k2, {bm({0, 2})}));
  CHECK(saturate(I(k2, {bm({2, 1}), bm({0, 3}), bm({5, 0})}), I(k2, {bm({0, 1})})).is_unit());
  CHECK(saturate(I(k2, {bm({1, 1})}), MonomialModule::zero_ideal(k2)).is_unit());
}

TEST_CASE("krull dimension") {
  // every ring here carries its T-variables; dimensions include them
  CHECK(krull_dim(I(k2, {bm({1, 1})})) == 2);
  CHECK(krull_dim(I(k22, {bm({1, 0}), bm({0, 1})})) == 2);
  CHECK(krull_dim(I(k2, {bm({2, 1}), bm({0, 1}, {1})})) == 2);
  CHECK(krull_dim(MonomialModule::unit_ideal(k2)) == -1);
  CHECK(krull_dim(MonomialModule::zero_ideal(k2)) == 3);
}

TEST_CASE("Proj dimension") {
  CHECK(proj_dim(MonomialModule::zero_ideal(k2)) == 2);
  CHECK(proj_dim(MonomialModule::zero_ideal(k22)) == 3);
  CHECK(proj_dim(I(k2, {bm({1, 0})})) == 1);
  CHECK(proj_dim(I(k2, {bm({0, 0}, {1})})) == -1);
}

TEST_CASE("length_between") {
  const auto u = S(k2, 1, {xt({1, 0}, 0), xt({0, 1}, 0)});
  const auto v = S(k2, 1, {xt({2, 0}, 0), xt({1, 1}, 0), xt({0, 2}, 0)});
  CHECK(length_between(v, u).value == 2);
  CHECK(length_between(u, u).value == 0);
  CHECK(length_between(u, u).certificate == -1);
  const auto unit = S(k2, 0, {bm({0, 0})});
  auto power = unit;
  for (int n = 1; n <= 12; ++n) {
    power = product(power, S(k2, 0, {bm({1, 0}), bm({0, 1})}));
    const auto r = length_between(power, unit);
    CHECK(r.status == LengthStatus::Finite);
    CHECK(r.value == n * (n + 1) / 2);
  }
  CHECK(length_between(S(k2, 0, {bm({1, 0})}), unit).status == LengthStatus::Infinite);
  CHECK_THROWS_AS(length_between(unit, power), Error);
}

TEST_CASE("length_between reports KMaxExceeded past the certificate cap") {
  const auto unit = S(k1, 0, {bm({0})});
  const auto deep = S(k1, 0, {bm({20})});
  CHECK(length_between(deep, unit, 64).value == 20);
  CHECK(length_between(deep, unit, 10).status == LengthStatus::KMaxExceeded);
}

TEST_CASE("property: minimalize is idempotent") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ctx = random_ctx(rng, 4);
    const auto u = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 5), 3));
    CHECK(minimalize(ctx, u.gens(), ModuleMode::Ideal) == u);
  }
}

TEST_CASE("property: sum, intersect and colon against membership up to degree 8") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ctx = random_ctx(rng, 4);
    const auto u = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 4), 3));
    const auto v = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 4), 3));
    const auto s = sum(u, v);
    const auto c = intersect(u, v);
    const auto m = random_gens(rng, ctx, 1, 2)[0];
    const auto q = colon(u, m);
    for (const auto& w : all_monomials(ctx, 8)) {
      const bool in_u = contains(u, w);
      const bool in_v = contains(v, w);
      CHECK(contains(s, w) == (in_u || in_v));
      CHECK(contains(c, w) == (in_u && in_v));
      CHECK(contains(q, w) == contains(u, multiply(w, m)));
    }
    CHECK(contains(u, product(q, I(ctx, {m}))));
  }
}

TEST_CASE("property: colon then multiply is exact for a monomial outside every support") {
  const auto ctx = RingContext::make(3, 1);
  const auto u = I(ctx, {bm({2, 0, 0}), bm({1, 1, 0}, {1})});
  const auto m = bm({0, 0, 2});
  CHECK(product(colon(u, m), I(ctx, {m})) == product(u, I(ctx, {m})));
  CHECK(colon(u, m) == u);
}

TEST_CASE("property: saturation is idempotent and extensive") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ctx = random_ctx(rng, 4);
    const auto u = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 4), 3));
    const auto w = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 2), 2));
    const auto s = saturate(u, w);
    CHECK(contains(s, u));
    CHECK(saturate(s, w) == s);
  }
}

TEST_CASE("property: saturation against the definition") {
  // m lies in U : W^inf iff m * W^k lies in U for some k; k = 8 suffices
  // at these exponent sizes.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ctx = random_ctx(rng, 3);
    const auto u = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 3), 2));
    const auto w = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 2), 1));
    const auto s = saturate(u, w);
    const auto wg = to_gens(w);
    const auto wk = oracle::power(oracle::Ring{ctx.d, ctx.rank}, wg, 8);
    const auto ug = to_gens(u);
    for (const auto& m : all_monomials(ctx, 4)) {
      bool inside = true;
      for (const auto& g : wk) inside = inside && oracle::member(ug, oracle::mul(to_mono(m, ctx), g));
      CHECK(contains(s, m) == inside);
    }
  }
}

TEST_CASE("property: krull_dim equals nvars minus brute-force height") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const int p = 1 + static_cast<int>(rng() % 2);
    const auto ctx = RingContext::make(d, p);
    const auto b = I(ctx, random_gens(rng, ctx, 1 + static_cast<int>(rng() % 4), 2));
    if (b.is_unit()) {
      CHECK(krull_dim(b) == -1);
      continue;
    }
    CHECK(krull_dim(b) == ctx.nvars() - brute_height(b));
  }
}

TEST_CASE("property: length_between against enumeration") {
  std::mt19937_64 rng(6);
  int finite = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto ctx = random_ctx(rng, 4);
    const int k = static_cast<int>(rng() % 3);
    const auto u = S(ctx, k, random_slice_gens(rng, ctx, k, 1 + static_cast<int>(rng() % 3), 2));
    const auto v = S(ctx, k, random_slice_gens(rng, ctx, k, 2 + static_cast<int>(rng() % 6), 4));
    const auto extra = intersect(u, v);
    const auto r = length_between(extra, u);
    try {
      const auto expected =
          oracle::count_between(oracle::Ring{ctx.d, ctx.rank}, k, to_gens(u), to_gens(extra), 40);
      CHECK(r.status == LengthStatus::Finite);
      CHECK(r.value == expected);
      ++finite;
    } catch (const oracle::NotFinite&) {
      CHECK(r.status != LengthStatus::Finite);
    }
  }
  CHECK(finite > 20);
}

#pragma once

#include <cstdint>
#include <vector>

#include "mixmult/monomial.hpp"

namespace mixmult {

enum class ModuleMode { Ideal, Slice };

/// Finitely generated monomial module, either an ideal of G or an
/// R-submodule of the T-degree-k piece G_k.  Generators are kept as a
/// sorted divisibility antichain, so equal modules compare equal.
class MonomialModule {
 public:
  MonomialModule() = default;

  static MonomialModule ideal(const RingContext& ctx, std::vector<BiMonomial> gens);
  static MonomialModule slice(const RingContext& ctx, int degree,
                              std::vector<BiMonomial> gens);
  static MonomialModule unit_ideal(const RingContext& ctx);
  static MonomialModule zero_ideal(const RingContext& ctx);
  /// All of G_k: generated by the T-monomials of degree k.
  static MonomialModule full_slice(const RingContext& ctx, int degree);

  const RingContext& ctx() const { return ctx_; }
  ModuleMode mode() const { return mode_; }
  /// Slice degree k; meaningless for ideals.
  int degree() const { return degree_; }
  const std::vector<BiMonomial>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;

  friend bool operator==(const MonomialModule&, const MonomialModule&) = default;

 private:
  RingContext ctx_{};
  ModuleMode mode_ = ModuleMode::Ideal;
  int degree_ = 0;
  std::vector<BiMonomial> gens_;
};

/// Divisibility in the given mode: for slices the T-parts must agree.
bool mode_divides(ModuleMode mode, const BiMonomial& a, const BiMonomial& b);

MonomialModule minimalize(const RingContext& ctx, std::vector<BiMonomial> gens,
                          ModuleMode mode, int degree = 0);
bool contains(const MonomialModule& u, const BiMonomial& m);
bool contains(const MonomialModule& u, const MonomialModule& v);
MonomialModule sum(const MonomialModule& u, const MonomialModule& v);
MonomialModule product(const MonomialModule& u, const MonomialModule& v);
MonomialModule intersect(const MonomialModule& u, const MonomialModule& v);
MonomialModule colon(const MonomialModule& u, const BiMonomial& m);
/// (U : W^infinity) for an ideal W of G.
MonomialModule saturate(const MonomialModule& u, const MonomialModule& w);
/// Krull dimension of G/B; -1 for the unit ideal.
int krull_dim(const MonomialModule& b);
/// Dimension of the support of G/B in Proj G, i.e. krull_dim of the
/// saturation by (T_1..T_rank) minus one; -1 when that support is empty.
int proj_dim(const MonomialModule& b);
MonomialModule irrelevant_ideal(const RingContext& ctx);

enum class LengthStatus { Finite, Infinite, KMaxExceeded };

struct LengthResult {
  LengthStatus status = LengthStatus::Finite;
  std::int64_t value = 0;
  /// A K with m^K U contained in V, certified from the largest degree of
  /// U \ V; -1 when U = V.
  std::int64_t certificate = -1;
};

inline constexpr int kDefaultKMax = 64;

/// Number of monomials in U \ V for V inside U, both in the same slice.
LengthResult length_between(const MonomialModule& v, const MonomialModule& u,
                            int kmax = kDefaultKMax);

}  // namespace mixmult

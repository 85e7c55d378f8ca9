#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixmult/module.hpp"

namespace mixmult {

/// All T-exponent vectors of the given degree in `rank` variables, in
/// lexicographically increasing order.
std::vector<ExpVec> t_monomials(int rank, int degree);

/// An R-submodule of G_k keyed by T-monomial: at each tau the x-parts form
/// a monomial ideal of R.  This is the working representation behind
/// Slice-mode MonomialModules.
class SliceMap {
 public:
  explicit SliceMap(int degree = 0) : degree_(degree) {}
  static SliceMap from_module(const MonomialModule& m);
  /// The degree-0 slice R.
  static SliceMap unit();

  int degree() const { return degree_; }
  const std::map<ExpVec, XIdeal>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  void add(const ExpVec& tau, const XIdeal& part);
  /// Part at tau of this slice times G_{|tau| - degree}.
  XIdeal lifted(const ExpVec& tau) const;
  SliceMap times(const SliceMap& other) const;
  MonomialModule to_module(const RingContext& ctx) const;

 private:
  int degree_;
  std::map<ExpVec, XIdeal> parts_;
};

/// B = relations of M = G/B.  Answers B_tau, the x-ideal {a : x^a tau in B}.
class Relations {
 public:
  explicit Relations(MonomialModule b);
  const MonomialModule& ideal() const { return b_; }
  XIdeal at(const ExpVec& tau) const;
  /// Drops the generators lying in B, part by part.
  SliceMap reduce(const SliceMap& s) const;

 private:
  MonomialModule b_;
  mutable std::mutex mutex_;
  mutable std::map<ExpVec, XIdeal> memo_;
};

/// Memoized products family[0]^e_0 * ... * family[m-1]^e_{m-1}, reduced
/// modulo B.  Safe for concurrent use.
class PowerCache {
 public:
  PowerCache(std::vector<SliceMap> family, std::shared_ptr<const Relations> rel);
  std::shared_ptr<const SliceMap> power(const std::vector<int>& exps) const;
  const std::vector<SliceMap>& family() const { return family_; }
  const Relations& relations() const { return *rel_; }

 private:
  std::vector<SliceMap> family_;
  std::shared_ptr<const Relations> rel_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<int>, std::shared_ptr<const SliceMap>> memo_;
};

/// x^a e_j with a zero-based component index j.
struct Term {
  ExpVec x{};
  int component = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

MonomialModule slice_from_terms(const RingContext& ctx, const std::vector<Term>& terms);

/// Degree-n piece of the Rees algebra generated by w(E).
MonomialModule rees_piece(const MonomialModule& e, int n);

/// The data (R, N = R/A, J, I_1..I_q, M = G/B).  B is a general monomial
/// ideal of G so quotients M/(x)M and saturations stay in this shape.
class Setup {
 public:
  static Setup build(const RingContext& ctx, const std::vector<ExpVec>& a,
                     const std::vector<Term>& f,
                     const std::vector<std::vector<Term>>& e);
  static Setup from_parts(MonomialModule relations, MonomialModule j,
                          std::vector<MonomialModule> family);

  const RingContext& ctx() const { return ctx_; }
  const MonomialModule& relations() const { return relations_; }
  const MonomialModule& j() const { return j_; }
  const std::vector<MonomialModule>& family() const { return family_; }
  int q() const { return static_cast<int>(family_.size()); }
  /// The ideal generated by I_1...I_q; with no I's, the irrelevant ideal.
  const MonomialModule& torsion_ideal() const { return torsion_; }

  /// Source id: -1 is G_1, 0 is J, i >= 1 is I_i.
  const MonomialModule& source(int id) const;

  Setup with_relations(const std::vector<BiMonomial>& extra) const;
  Setup with_relations_ideal(MonomialModule b) const;
  MonomialModule saturated_relations() const;
  Setup saturated() const;
  /// True when the torsion ideal is not nilpotent on M.
  bool nondegenerate() const;
  void require_nondegenerate() const;
  /// Canonical text; equal setups give equal fingerprints.
  std::string fingerprint() const;

 private:
  RingContext ctx_{};
  MonomialModule relations_;
  MonomialModule j_;
  std::vector<MonomialModule> family_;
  MonomialModule torsion_;
  MonomialModule full_g1_;
};

/// I^r M_{n+p} and J^n I^r M_p inside M_{n+|r|+p}, generators in B removed.
std::pair<MonomialModule, MonomialModule> power_product(const Setup& setup, int n,
                                                        int p, const std::vector<int>& r);

using GridPoint = std::vector<int>;

/// Persistent cell storage consulted by GridFunction.
class CellStore {
 public:
  virtual ~CellStore() = default;
  virtual std::optional<std::int64_t> lookup(const std::string& fingerprint,
                                             const GridPoint& point) = 0;
  virtual void store(const std::string& fingerprint, const GridPoint& point,
                     std::int64_t value) = 0;
};

/// Exact integer function on N^axes with an in-memory memo and an optional
/// persistent store.  Evaluation is thread-safe.
class GridFunction {
 public:
  virtual ~GridFunction() = default;
  virtual int axes() const = 0;
  virtual std::vector<std::string> axis_names() const = 0;
  virtual std::string fingerprint() const = 0;

  std::int64_t operator()(const GridPoint& point) const;
  /// Evaluates all points, spreading misses over `threads` workers.
  void prefetch(const std::vector<GridPoint>& points, int threads) const;
  void set_store(CellStore* store) { store_ = store; }
  bool is_cached(const GridPoint& point) const;
  /// Cells whose finiteness certificate exceeds kmax throw KMaxExceeded.
  void set_kmax(int kmax) { kmax_ = kmax; }
  int kmax() const { return kmax_; }

  std::size_t computed_cells() const;

 protected:
  virtual std::int64_t compute(const GridPoint& point) const = 0;

 private:
  CellStore* store_ = nullptr;
  int kmax_ = kDefaultKMax;
  mutable std::mutex mutex_;
  mutable std::map<GridPoint, std::int64_t> memo_;
  mutable std::size_t computed_ = 0;
};

/// h(n, p, r) = length(I^r M_{n+p} / J^n I^r M_p); axes (n, p, r_1..r_q).
class MixedLengthFunction : public GridFunction {
 public:
  explicit MixedLengthFunction(Setup setup);
  int axes() const override { return 2 + setup_.q(); }
  std::vector<std::string> axis_names() const override;
  std::string fingerprint() const override;
  const Setup& setup() const { return setup_; }

 protected:
  std::int64_t compute(const GridPoint& point) const override;

 private:
  Setup setup_;
  std::shared_ptr<const Relations> rel_;
  PowerCache powers_;
};

/// Multi-module Buchsbaum-Rim function
/// psi(r_1..r_m, q) = length(M_{|r|+q} / E_1^{r_1}...E_m^{r_m} M_q).
/// With a single module this is the Buchsbaum-Rim function h(n, q).
class BuchsbaumRimFunction : public GridFunction {
 public:
  BuchsbaumRimFunction(MonomialModule relations, std::vector<MonomialModule> modules);
  int axes() const override { return static_cast<int>(modules_.size()) + 1; }
  std::vector<std::string> axis_names() const override;
  std::string fingerprint() const override;
  const MonomialModule& relations() const { return relations_; }

 protected:
  std::int64_t compute(const GridPoint& point) const override;

 private:
  MonomialModule relations_;
  std::vector<MonomialModule> modules_;
  std::shared_ptr<const Relations> rel_;
  PowerCache powers_;
};

std::int64_t h_value(const Setup& setup, int n, int p, const std::vector<int>& r);
/// length(M_{n+q} / R_n(E) M_q) with M = G/B.
std::int64_t br_value(const MonomialModule& e, const MonomialModule& relations, int n, int q);

/// Grid given by inclusive per-axis ranges.
struct GridSpec {
  std::vector<std::pair<int, int>> ranges;
  std::vector<GridPoint> points() const;
  std::size_t cardinality() const;
};

struct LengthTable {
  std::vector<std::string> axis_names;
  GridSpec grid;
  /// Cells in grid order.
  std::vector<std::pair<GridPoint, std::int64_t>> cells;
  /// Per cell: true when served from a cache rather than computed here.
  std::vector<bool> cached;
};

LengthTable fill_table(const GridFunction& f, const GridSpec& grid, int threads = 1);

}  // namespace mixmult

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/graded.hpp"

namespace mixmult {

/// Orders (j on the p-axis, k0 on the n-axis, k on the r-axes).
struct MultiIndex {
  int j = 0;
  int k0 = 0;
  std::vector<int> k;

  int total() const;
  /// Difference order in the axis layout (n, p, r_1..r_q).
  std::vector<int> mixed_order() const;
  std::string to_string() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Every MultiIndex with q r-axes and total `degree`, in a fixed order.
std::vector<MultiIndex> indices_of_total(int q, int degree);

struct StabilizationPolicy {
  /// Shifts 0..window-1 along every axis.
  int window = 3;
  int rounds = 4;
  /// Per-axis starting base; empty means degree+2 on every axis.
  std::vector<int> base;
  /// When positive and `base` is empty, the base on every axis.
  int uniform_base = 0;
  int threads = 1;
  /// Applied to grid functions built internally.
  int kmax = kDefaultKMax;
  /// Persistent cells for grid functions built internally; not owned.
  CellStore* store = nullptr;
};

struct Evidence {
  GridPoint base;
  int window = 0;
  int round = 0;
  std::size_t samples = 0;
};

struct Coefficient {
  std::vector<int> order;
  std::int64_t value = 0;
  Evidence evidence;
};

/// Iterated forward difference of f at base.
std::int64_t finite_difference(const GridFunction& f, const std::vector<int>& order,
                               const GridPoint& base);
/// Same over a filled table; GridTooSmall when the table misses a point.
std::int64_t finite_difference(const LengthTable& t, const std::vector<int>& order,
                               const GridPoint& base);

/// Difference of the given order, required constant over the window;
/// the base doubles until it is.  Throws UnstableWindow otherwise or when
/// the constant is negative.
Coefficient stabilized_difference(const GridFunction& f, const std::vector<int>& order,
                                  const GridPoint& base, const StabilizationPolicy& policy);

/// Dimension of Supp M* in Proj G, the predicted degree of h.
int dimension_D(const Setup& setup);

struct DegreeResult {
  int degree = 0;
  GridPoint base;
};

/// Least D' with every difference of total order D'+1 vanishing over the
/// window at the policy base (default formula+2 on every axis).
DegreeResult detect_degree(const GridFunction& f, int formula, const StabilizationPolicy& policy);

struct MultiplicityEntry {
  MultiIndex index;
  std::int64_t value = 0;
  Evidence evidence;
};

struct MultiplicityReport {
  int d_detected = 0;
  int d_formula = 0;
  std::vector<MultiplicityEntry> entries;
  std::vector<std::string> warnings;
};

/// e^j(J^[k0], I^[k]; M) with the degree already known.
MultiplicityEntry mixed_multiplicity(const MixedLengthFunction& f, const MultiIndex& idx,
                                     int degree, const StabilizationPolicy& policy);
MultiplicityEntry mixed_multiplicity(const Setup& setup, const MultiIndex& idx,
                                     const StabilizationPolicy& policy = {});
/// All entries of total degree D_detected.
MultiplicityReport mixed_multiplicities(const MixedLengthFunction& f,
                                        const StabilizationPolicy& policy = {});

struct BuchsbaumRimResult {
  int degree = 0;
  int j = 0;
  std::int64_t value = 0;
  Evidence evidence;
  std::vector<std::string> warnings;
};

/// e^j(E, G, M) for M = G/B.  With `degree` given, the coefficient is taken
/// at that total degree instead of the detected one.
BuchsbaumRimResult buchsbaum_rim(const BuchsbaumRimFunction& f, int j,
                                 const StabilizationPolicy& policy = {},
                                 std::optional<int> degree = std::nullopt);
BuchsbaumRimResult buchsbaum_rim(const MonomialModule& e, const MonomialModule& relations, int j,
                                 const StabilizationPolicy& policy = {},
                                 std::optional<int> degree = std::nullopt);

struct HeightResult {
  int height = 0;
  /// Set when I + B saturates to the unit ideal.
  bool flagged = false;
};

/// ht((I + Ann M)/Ann M) as a difference of Proj dimensions.
HeightResult height_mod_ann(const Setup& setup);

}  // namespace mixmult

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/multiplicity.hpp"
#include "mixmult/sequences.hpp"

namespace mixmult {

enum class Theorem { Teo1, Teo4, Generalized, CorGeneralized, TrungVerma, Mod1, Mod2, Mod3 };

/// rejected: a hypothesis check failed, so the case says nothing about
/// the equality.
enum class CaseVerdict { Confirmed, Conditional, Refuted, Rejected };

const char* to_string(Theorem t);
const char* to_string(CaseVerdict v);
std::optional<Theorem> theorem_from_string(const std::string& s);

struct VerificationCase {
  Theorem target = Theorem::Teo1;
  MultiIndex index;
  /// Elements from the I's (or E's), in check order.
  std::vector<Candidate> sequence;
  /// Elements from J or G_1 (generalized cases only).
  std::vector<Candidate> ys;
  std::vector<CheckReport> checks;
  std::optional<std::int64_t> lhs;
  std::optional<std::int64_t> rhs;
  /// Teo4: the saturated right side, for the CRU cross-check.
  std::optional<std::int64_t> rhs_saturated;
  std::optional<int> height;
  CaseVerdict verdict = CaseVerdict::Conditional;
  std::string note;
  std::vector<std::string> warnings;
};

struct HarnessOptions {
  StabilizationPolicy policy;
  /// Defaults to default_window(setup).
  std::optional<Window> window;
};

/// Source ids 0..q: checks run with respect to (J, I_1..I_q; M).
std::vector<int> with_j_family(const Setup& setup);

/// Without cs, searches the monomial candidates for an FC-sequence of shape k.
VerificationCase verify_teo1(const Setup& setup, const std::optional<std::vector<Candidate>>& cs,
                             const MultiIndex& idx, const HarnessOptions& opt = {});
/// Throws HeightPreconditionFailed unless ht > t and k0 > 0.
VerificationCase verify_teo4(const Setup& setup, const std::optional<std::vector<Candidate>>& cs,
                             const MultiIndex& idx, const HarnessOptions& opt = {});
/// ys from J (and from G_1 in the corollary), xs from the I's.
VerificationCase verify_generalized(const Setup& setup, const std::vector<Candidate>& ys,
                                    const std::vector<Candidate>& xs, const MultiIndex& idx,
                                    const HarnessOptions& opt = {});
VerificationCase verify_trung_verma(const Setup& setup, const std::vector<Candidate>& cs,
                                    const MultiIndex& idx, const HarnessOptions& opt = {});
/// Sequence sources: -1 for R^p, i for E_i.  N = R.
VerificationCase verify_mod3(const RingContext& ctx, const std::vector<MonomialModule>& e,
                             const std::vector<Candidate>& sequence, int j,
                             const std::vector<int>& k, const HarnessOptions& opt = {});

/// Slice(1) module generated by the elements.
MonomialModule generated_module(const RingContext& ctx, const std::vector<Candidate>& cs);
/// True when the slice has finite colength in G_1 modulo the relations.
bool finite_colength(const MonomialModule& e, const MonomialModule& relations);

}  // namespace mixmult

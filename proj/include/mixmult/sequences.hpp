#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixmult/graded.hpp"

namespace mixmult {

/// A monomial element x^a T_c of G_1 drawn from a source module.
/// Source ids follow Setup::source: -1 is G_1, 0 is J, i >= 1 is I_i.
struct Candidate {
  BiMonomial element;
  int source = 1;

  /// Throws InvalidArgument unless the element is a nonzero minimal
  /// generator of its source in `setup`.
  static Candidate make(const Setup& setup, const BiMonomial& element, int source);
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Reason the candidate is invalid in `setup`, or nullopt when valid.
std::optional<std::string> candidate_problem(const Setup& setup, const Candidate& c);
std::string to_string(const Candidate& c, const RingContext& ctx);

/// Sampled window: r-axes in [r_start, r_end] (the FC1 threshold r' is
/// r_start), p in [0, p_max].
struct Window {
  int r_start = 2;
  int r_end = 4;
  int p_max = 2;
  friend bool operator==(const Window&, const Window&) = default;
};

/// r_start = D + 2, three r-values, p up to 2.
Window default_window(const Setup& setup);
Window doubled(const Window& w);

enum class Verdict { Pass, Fail, Inconclusive };
enum class Condition { Candidate, FC1, FC2, FC3, WeakFCSequence, FCSequence, Superficial,
                       JointReduction };
const char* to_string(Verdict v);
const char* to_string(Condition c);

struct Witness {
  /// (r_1..r_m, p) for windowed checks; empty otherwise.
  GridPoint point;
  /// Element of the left side missing from the right side.
  BiMonomial monomial;
  std::string detail;
};

struct CheckReport {
  Condition condition = Condition::FC1;
  Verdict verdict = Verdict::Pass;
  Window window;
  std::optional<Witness> witness;
  std::string note;
  /// Sequences: index of the failing step, -1 if none.
  int failed_step = -1;
  /// Sequences: dim Supp of M/(x_1..x_i)M : I^inf for i = 0..t.
  std::vector<int> dims;
  /// Sequences: whether each step satisfied FC3.
  std::vector<bool> fc3;
  std::vector<CheckReport> steps;

  bool passed() const { return verdict == Verdict::Pass; }
};

/// Source ids 1..q.
std::vector<int> default_family(const Setup& setup);

CheckReport check_fc1(const Setup& setup, const Candidate& c, const Window& w,
                      const std::vector<int>& family);
CheckReport check_fc1(const Setup& setup, const Candidate& c, const Window& w);
CheckReport check_fc2(const Setup& setup, const Candidate& c);
/// Throws TrivialModule when M* is zero.
CheckReport check_fc3(const Setup& setup, const Candidate& c);

enum class SequenceMode { WeakFC, FC };

CheckReport check_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                           SequenceMode mode, const Window& w, const std::vector<int>& family);
CheckReport check_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                           SequenceMode mode, const Window& w);

/// Quotient setup M/(x_1..x_t)M.
Setup quotient(const Setup& setup, const std::vector<Candidate>& cs);

CheckReport check_superficial(const Setup& setup, const Candidate& c, int epsilon,
                              const Window& w);
/// Each element of cs is checked in the quotient by its predecessors.
CheckReport check_superficial_sequence(const Setup& setup, const std::vector<Candidate>& cs,
                                       const Window& w);

/// jr[j] lists the elements of the j-th reduction module, drawn from I_{j+1}.
CheckReport check_joint_reduction(const Setup& setup,
                                  const std::vector<std::vector<Candidate>>& jr,
                                  const Window& w);

/// First minimal generator of I_i (lex order, x first) that is weak-(FC).
std::optional<Candidate> find_weak_fc(const Setup& setup, int i, const Window& w);

struct MaximalFamily {
  /// parts[i] holds the elements drawn from I_{i+1}.
  std::vector<std::vector<Candidate>> parts;
  std::vector<Candidate> sequence;
  /// True when the last quotient made the torsion ideal nilpotent on M.
  bool ended_by_torsion = false;
};

MaximalFamily assemble_maximal_family(const Setup& setup, const Window& w);

/// Depth-first search for a sequence with the given per-step sources,
/// each step passing the given mode in the running quotient.
std::optional<std::vector<Candidate>> find_sequence(const Setup& setup,
                                                    const std::vector<int>& sources,
                                                    SequenceMode mode, const Window& w,
                                                    const std::vector<int>& family);

/// Sources for shape k: k_1 copies of 1, then k_2 copies of 2, ...
std::vector<int> shape_sources(const std::vector<int>& k);

}  // namespace mixmult

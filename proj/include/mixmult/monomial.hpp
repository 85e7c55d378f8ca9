#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixmult {

/// Hard upper bound on the number of x- or T-variables.
inline constexpr int kMaxVars = 8;
/// Exponents above this abort with ErrorKind::Overflow.
inline constexpr std::int32_t kMaxExponent = 1 << 24;

using Exponent = std::int32_t;
/// Exponent vector; entries beyond the active variable count stay zero.
using ExpVec = std::array<Exponent, kMaxVars>;

enum class ErrorKind {
  InvalidArgument,
  MixedSliceDegrees,
  DegreeMismatch,
  ModeMismatch,
  NotContained,
  KMaxExceeded,
  Infinite,
  Overflow,
  GridTooSmall,
  UnstableWindow,
  TrivialModule,
  HeightPreconditionFailed,
  ColengthError,
  ParseError,
  ArityError,
  UnknownReference,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// R = k[x_1..x_d] and G = R[T_1..T_rank].  The field is never needed:
/// every quantity computed here is a monomial count.
struct RingContext {
  int d = 1;
  int rank = 1;

  static RingContext make(int d, int rank);
  int nvars() const { return d + rank; }
  std::string x_name(int i) const;
  std::string t_name(int j) const;
  friend bool operator==(const RingContext&, const RingContext&) = default;
};

// Exponent vector arithmetic.  All helpers act on the full array.
bool leq(const ExpVec& a, const ExpVec& b);
ExpVec add(const ExpVec& a, const ExpVec& b);
ExpVec lcm(const ExpVec& a, const ExpVec& b);
ExpVec gcd(const ExpVec& a, const ExpVec& b);
/// max(a - b, 0) componentwise.
ExpVec monus(const ExpVec& a, const ExpVec& b);
std::int64_t degree(const ExpVec& a);
ExpVec unit_vector(int i, Exponent e = 1);

/// A monomial x^a T^b of G.
struct BiMonomial {
  ExpVec x{};
  ExpVec t{};

  std::int64_t tdegree() const { return degree(t); }
  std::int64_t xdegree() const { return degree(x); }
  friend bool operator==(const BiMonomial&, const BiMonomial&) = default;
  friend auto operator<=>(const BiMonomial&, const BiMonomial&) = default;
};

/// x^a T_j, the image w(x^a e_j) of a term vector.
BiMonomial term(const ExpVec& x, int component);
BiMonomial multiply(const BiMonomial& a, const BiMonomial& b);
bool divides(const BiMonomial& a, const BiMonomial& b);
BiMonomial lcm(const BiMonomial& a, const BiMonomial& b);
std::string to_string(const BiMonomial& m, const RingContext& ctx);
std::string to_string(const ExpVec& x, int nvars);

/// Monomial ideal of R stored as its minimal generators (sorted).
class XIdeal {
 public:
  XIdeal() = default;
  static XIdeal unit();
  static XIdeal from_gens(std::vector<ExpVec> gens);

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool contains(const ExpVec& m) const;
  bool contains(const XIdeal& other) const;
  const std::vector<ExpVec>& gens() const { return gens_; }

  XIdeal operator+(const XIdeal& other) const;
  XIdeal operator*(const XIdeal& other) const;
  XIdeal shifted(const ExpVec& m) const;
  XIdeal colon(const ExpVec& m) const;
  XIdeal intersect(const XIdeal& other) const;

  friend bool operator==(const XIdeal&, const XIdeal&) = default;
  friend auto operator<=>(const XIdeal&, const XIdeal&) = default;

 private:
  std::vector<ExpVec> gens_;
};

/// Keeps the divisibility-minimal elements, sorted and deduplicated.
std::vector<ExpVec> minimal_antichain(std::vector<ExpVec> gens);

/// |U \ W| for monomial ideals of k[x_1..x_nvars].
struct CountResult {
  bool finite = true;
  std::int64_t count = 0;
  /// Largest degree of a monomial in U \ W, -1 if empty.
  std::int64_t max_degree = -1;
};

CountResult count_difference(const XIdeal& u, const XIdeal& w, int nvars);

/// Number of standard monomials of W (finite iff W is primary to the
/// maximal ideal or nvars = 0).
CountResult count_standard(const XIdeal& w, int nvars);

}  // namespace mixmult

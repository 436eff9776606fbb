// Exact arithmetic in S = Z[q^{1/2}, q^{-1/2}][Lambda] and its fraction field.
//
// Weight exponents are stored in half-units of fundamental-weight coordinates,
// so e^{rho} and q^{1/2}-normalizations stay integral.  Rational functions keep
// their denominators as a multiset of binomial atoms (1 - q^{j/2} e^{mu/2})
// plus an occasional non-atomic residual; equality is always decided by exact
// cross-multiplication, simplification is best-effort trial division.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kstab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Monomial exponents

// Exponent of q^{qh/2} e^{w/2}; w holds half-units of fundamental-weight
// coordinates, zero-padded beyond the ambient rank.
struct ExpKey {
  static constexpr int kMaxRank = 8;
  int32_t qh = 0;
  std::array<int16_t, kMaxRank> w{};

  friend auto operator<=>(const ExpKey&, const ExpKey&) = default;

  bool is_zero() const;
  bool weight_is_zero() const;
  ExpKey operator+(const ExpKey& o) const;
  ExpKey operator-(const ExpKey& o) const;
  ExpKey negated() const;
};

// q^{k/2}
ExpKey qhalf_exp(int32_t k);
// e^{w/2} for w in half-units
ExpKey weight_exp(const std::vector<int>& halves);

// ---------------------------------------------------------------------------
// Laurent polynomials

class LaurentPoly {
 public:
  LaurentPoly() = default;  // zero
  static LaurentPoly constant(Int c);
  static LaurentPoly one() { return constant(1); }
  static LaurentPoly monomial(Int c, const ExpKey& e);

  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  // Nonzero monomial?  Returns (coefficient, exponent).
  std::optional<std::pair<Int, ExpKey>> as_monomial() const;
  size_t term_count() const { return t_.size(); }
  const std::vector<std::pair<ExpKey, Int>>& terms() const { return t_; }

  Int coeff(const ExpKey& e) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }

  LaurentPoly times_monomial(const Int& c, const ExpKey& e) const;
  LaurentPoly times_int(const Int& c) const;

  // Applies a linear map to every exponent (must be injective on the support).
  LaurentPoly map_exponents(const std::function<ExpKey(const ExpKey&)>& f) const;

  // Inserts one term; used by builders.  Keeps the invariant sorted/nonzero.
  void add_term(const ExpKey& e, const Int& c);

  std::string to_string(int rank) const;

 private:
  // sorted by ExpKey, no zero coefficients
  std::vector<std::pair<ExpKey, Int>> t_;
};

// ---------------------------------------------------------------------------
// Binomial atoms 1 - X^m with m != 0, canonically oriented: the weight part of
// m is ShortLex-positive (first nonzero half-coordinate > 0), or the weight
// part vanishes and the q-exponent is positive.

struct Atom {
  ExpKey m;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  LaurentPoly to_poly() const;
};

bool atom_is_canonical(const ExpKey& m);
// Returns the canonical atom together with the unit u (a signed monomial, as a
// one-term LaurentPoly) such that (1 - X^m) = u * (1 - X^{m'}).
std::pair<Atom, LaurentPoly> canonical_atom(const ExpKey& m);

// Exact division of p by the atom (1 - X^m); nullopt when not divisible.
// Division by a zero atom (m == 0) is rejected with an exception.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const Atom& f);

// Exact division by a general poly, best effort: returns nullopt if the
// (Laurent) long division does not terminate cleanly with remainder zero.
std::optional<LaurentPoly> exact_divide_general(const LaurentPoly& p,
                                                const LaurentPoly& d);

// ---------------------------------------------------------------------------
// Rational functions

class RationalFn {
 public:
  RationalFn() = default;  // zero
  /* implicit */ RationalFn(int c);
  static RationalFn from_poly(LaurentPoly p);
  static RationalFn from_int(const Int& c);
  static RationalFn from_rat(const Rat& c);
  static RationalFn monomial(Int c, const ExpKey& e);
  // c * q^{k/2}
  static RationalFn q_power(int32_t k_halves);
  // p / (prod of atoms)
  static RationalFn fraction(LaurentPoly num, const std::vector<ExpKey>& atom_exps);

  bool is_zero() const { return num_.is_zero(); }
  bool den_is_one() const { return atoms_.empty() && res_.is_one(); }
  const LaurentPoly& num() const { return num_; }
  const std::vector<std::pair<Atom, int>>& den_atoms() const { return atoms_; }
  const LaurentPoly& den_residual() const { return res_; }
  LaurentPoly den_poly() const;

  // If the denominator reduces away completely, the polynomial itself.
  std::optional<LaurentPoly> as_poly() const;

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator-() const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  RationalFn inverse() const;

  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }

  // Exact equality by cross-multiplication (with a random-evaluation fast
  // path that can only short-circuit a negative answer).
  bool equals(const RationalFn& o) const;

  RationalFn map_exponents(const std::function<ExpKey(const ExpKey&)>& f) const;
  // e^{lambda} -> e^{-lambda}, q fixed.
  RationalFn negate_weights() const;
  // q^{1/2} -> q^{-1/2}
  RationalFn invert_q() const;

  std::string to_string(int rank) const;

 private:
  void normalize();

  LaurentPoly num_;
  std::vector<std::pair<Atom, int>> atoms_;  // sorted, multiplicity > 0
  LaurentPoly res_ = LaurentPoly::one();     // non-atomic denominator part
};

// ---------------------------------------------------------------------------
// Character evaluation

// An unramified character: nonzero exact rational values on the simple roots
// plus a value for q (and optionally q^{1/2}).  Only exponents lying in the
// root lattice can be evaluated.
class CharacterAssignment {
 public:
  CharacterAssignment(std::vector<Rat> simple_root_values, Rat q_value);

  int rank() const { return int(vals_.size()); }
  const Rat& q() const { return q_; }
  const std::vector<Rat>& simple_root_values() const { return vals_; }

  // Value of e^{mu} where mu is given in simple-root coordinates.
  Rat eval_root_coords(const std::vector<Rat>& root_coords) const;
  // q^{k/2}; throws unless k is even or q has an exact rational square root.
  Rat eval_qhalf(int32_t k) const;

 private:
  std::vector<Rat> vals_;
  Rat q_;
  std::optional<Rat> qhalf_;
};

struct EvalError {
  std::string message;
};

// Thrown as std::runtime_error with a message naming the vanishing atom.
// `fund_to_root` converts a weight in half-unit fundamental coordinates into
// simple-root coordinates (supplied by the root system).
Rat evaluate_character(
    const RationalFn& x, const CharacterAssignment& tau,
    const std::function<std::vector<Rat>(const ExpKey&)>& fund_to_root,
    int rank);

// ---------------------------------------------------------------------------
// Newton polygons (convex hulls of weight exponents, exact rational)

struct NewtonPolygon {
  // Vertex coordinates in Lambda (x) Q, fundamental-weight coordinates.
  std::vector<std::vector<Rat>> vertices;
};

// Hull of the weight-exponent support of x (q-exponents ignored).
// Rejects the zero polynomial.
NewtonPolygon newton_polygon(const LaurentPoly& x, int rank);

// conv(inner + shift_inner) contained in conv(outer + shift_outer)?
bool hull_contained_in(const NewtonPolygon& inner, const std::vector<Rat>& shift_inner,
                       const NewtonPolygon& outer, const std::vector<Rat>& shift_outer);

bool point_in_hull(const std::vector<Rat>& p, const std::vector<std::vector<Rat>>& pts);

// ---------------------------------------------------------------------------
// Deterministic randomness for property tests / equality prefilter.

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next();
  // uniform in [lo, hi]
  int64_t next_int(int64_t lo, int64_t hi);
};

LaurentPoly random_poly(Rng& rng, int rank, int max_terms, int max_exp);
RationalFn random_rational(Rng& rng, int rank, int max_terms, int max_exp);

}  // namespace kstab

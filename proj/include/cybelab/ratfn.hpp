#pragma once

#include <map>
#include <string>
#include <vector>

#include "cybelab/mpoly.hpp"

namespace cybelab {

/// An irreducible denominator factor, stored monic (lex-leading coefficient 1).
///
/// Admissible atoms are the linear forms (this covers l, m, n, l-m, l-n, m-n,
/// l+1, l-1 and every shift l+E of them) and univariate quadratics that are
/// irreducible over Q, which is where a registered density such as
/// a1 + 2 a2 l + a3 l^2 at fixed rational coefficients lands when it does not
/// split.
using Atom = MPoly;

bool is_admissible_atom(const MPoly& p);

/// Multiset of atoms with positive multiplicities.
using AtomPowers = std::map<Atom, int>;

/// Split a nonzero polynomial into content * prod(atoms^k).
/// `hints` are extra atoms tried as trial divisors before giving up.
/// Throws AtomEscape if some factor is not admissible.
struct Atomized {
  Scalar content;
  AtomPowers atoms;
};
Atomized atomize(const MPoly& p, const std::vector<Atom>& hints = {});

/// Monic normalization; returns the stripped leading coefficient.
Scalar make_monic(MPoly& p);

/// Rational function num / prod(atom^k).
///
/// Canonical form: the numerator is not divisible by any denominator atom.
/// Since atoms are monic irreducibles the canonical form is unique, and
/// equality is structural; operator== nevertheless compares by cross
/// multiplication so it holds for any pair of valid values.
class RatFn {
public:
  RatFn() = default;
  RatFn(const MPoly& p) : num_(p) {}      // NOLINT
  RatFn(const Scalar& c) : num_(c) {}     // NOLINT
  RatFn(int c) : num_(Scalar(c)) {}       // NOLINT

  static RatFn var(Var v) { return RatFn(MPoly::var(v)); }
  /// num / den where den is an arbitrary nonzero polynomial (atomized).
  static RatFn fraction(const MPoly& num, const MPoly& den);
  static RatFn from_parts(MPoly num, AtomPowers den);

  const MPoly& num() const { return num_; }
  const AtomPowers& den() const { return den_; }
  MPoly den_poly() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Scalar constant_value() const;  // precondition: is_constant()
  bool depends_on(Var v) const;

  RatFn& operator+=(const RatFn& o);
  RatFn& operator-=(const RatFn& o);
  RatFn& operator*=(const RatFn& o);
  RatFn& operator/=(const RatFn& o) { return *this *= o.inverse(); }
  friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
  friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
  friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
  friend RatFn operator/(RatFn a, const RatFn& b) { return a /= b; }
  RatFn operator-() const;

  /// Throws AtomEscape when the numerator does not split into atoms.
  RatFn inverse() const;
  RatFn pow(int n) const;

  friend bool operator==(const RatFn& a, const RatFn& b);
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  /// Simultaneous substitution v -> image(v).
  RatFn substitute(const std::map<Var, RatFn>& images) const;
  RatFn rename(const std::map<Var, Var>& mapping) const;
  /// Throws std::domain_error at a pole.
  RatFn evaluate(const std::map<Var, Scalar>& point) const;

  /// Re-run normalization; idempotent on canonical values.
  RatFn normalized() const { return from_parts(num_, den_); }

  std::string to_string() const;

private:
  void canonicalize();
  MPoly num_;
  AtomPowers den_;
};

/// Sum many values over one common denominator, canonicalizing once.
RatFn sum(const std::vector<RatFn>& parts);

/// Affine image a*v + b or reciprocal 1/v, as used by the catalog transforms.
RatFn affine_image(Var v, const Scalar& a, const RatFn& b);
RatFn reciprocal_image(Var v);

}  // namespace cybelab

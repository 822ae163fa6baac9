#pragma once

#include <map>
#include <string>

#include "cybelab/conventions.hpp"
#include "cybelab/ratfn.hpp"

namespace cybelab {

struct Point {
  enum class Kind { Zero, Infinity, Finite };
  Kind kind = Kind::Zero;
  Scalar value = 0;  // only for Finite

  static Point zero() { return {Kind::Zero, 0}; }
  static Point infinity() { return {Kind::Infinity, 0}; }
  static Point at(const Scalar& c) { return {Kind::Finite, c}; }
  friend bool operator==(const Point& a, const Point& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
  std::string to_string() const;
};

/// Truncated expansion of a rational function in one variable around a point.
///
/// Coefficient k multiplies (var - c)^k at a finite point c, var^k at zero and
/// at infinity. Every degree in [lo, hi] is exact. `complete_low` asserts that
/// all degrees below lo vanish, `complete_high` the same above hi; a Laurent
/// polynomial is complete on both sides.
class SeriesWindow {
public:
  SeriesWindow(Var var, Point point, int lo, int hi, bool complete_low, bool complete_high);

  /// A finite Laurent polynomial viewed as a window that is complete on both sides.
  static SeriesWindow laurent(Var var, Point point, const std::map<int, RatFn>& coeffs);

  Var var() const { return var_; }
  const Point& point() const { return point_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool complete_low() const { return complete_low_; }
  bool complete_high() const { return complete_high_; }
  const std::map<int, RatFn>& coeffs() const { return coeffs_; }

  /// Exact coefficient; WindowTooNarrow if k is neither in the window nor in a
  /// region known to vanish.
  RatFn coefficient(int k) const;
  bool knows(int k) const;

  void set(int k, RatFn c);

  /// Restrict validity to [lo, hi] (never enlarges).
  SeriesWindow restricted(int lo, int hi) const;

  friend SeriesWindow operator+(const SeriesWindow& a, const SeriesWindow& b);
  friend SeriesWindow operator-(const SeriesWindow& a, const SeriesWindow& b);
  /// Throws InfiniteSum when a coefficient would need an unbounded sum.
  friend SeriesWindow operator*(const SeriesWindow& a, const SeriesWindow& b);
  SeriesWindow operator*(const RatFn& c) const;

  std::string to_string() const;

private:
  Var var_;
  Point point_;
  int lo_, hi_;
  bool complete_low_, complete_high_;
  std::map<int, RatFn> coeffs_;
};

/// Expansion of f in `var` at `point`, exact on degrees [lo, hi].
SeriesWindow expand(const RatFn& f, Var var, const Point& point, int lo, int hi);

/// Residue of f d(var). At a finite point (zero included) this is the
/// coefficient of (var - c)^{-1}; at infinity it is sigma * [var^{-1}].
RatFn residue(const RatFn& f, Var var, const Point& point, int sigma_inf);
RatFn residue(const RatFn& f, Var var, const Point& point, const ConventionProfile& profile);
RatFn residue(const SeriesWindow& s, int sigma_inf);

/// Finite poles of f in `var` where f depends on no other variable in the
/// pole location (atoms linear in var with rational root).
std::vector<Scalar> rational_poles(const RatFn& f, Var var);

}  // namespace cybelab

#pragma once

#include <string>

namespace cybelab {

enum class BPoint { Zero, Infinity };

/// Which leg of a two-leg tensor is contracted against the argument.
enum class LegOrder {
  FirstInSecondOut,  // R(A)(m) = <r(l,m), A(l) (x) 1>
  SecondInFirstOut,  // R(A)(l) = <r(l,m), 1 (x) A(m)>
};

/// The resolution of every sign and expansion choice left implicit by the
/// loop-algebra formulas. `sigma_inf` multiplies the l^{-1} coefficient when
/// taking a residue at infinity (-1 is the classical choice).
struct ConventionProfile {
  int sigma_inf = -1;
  BPoint b_point = BPoint::Infinity;
  LegOrder leg_order = LegOrder::FirstInSecondOut;

  friend bool operator==(const ConventionProfile&, const ConventionProfile&) = default;
  std::string to_string() const;
};

/// The classical convention, used where the choice is not a calibration target.
inline constexpr ConventionProfile kClassicalProfile{};

}  // namespace cybelab

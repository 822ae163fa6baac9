#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cybelab/ratfn.hpp"
#include "cybelab/sl2.hpp"

namespace cybelab {

/// A named two-leg tensor r(l, m) with rational coefficients.
struct RMatrixDef {
  std::string name;
  Tensor2<RatFn> tensor;
  std::string note;
};

enum class R2Variant { Plus, Minus };

/// r1, r2_plus, r2_minus, r3, r1_stolin_const, r1_stolin_lin, r3_stolin_const, r3_stolin_lin.
const std::vector<std::string>& catalog_names();

/// Throws UnknownName. The r3_stolin_* entries are the derived transforms of
/// the r1_stolin_* entries (see derive_stolin_r3); the printed forms are
/// available through make_printed.
RMatrixDef make(const std::string& name);

/// The r3_stolin_* forms exactly as displayed next to the Stolin matrices.
RMatrixDef make_printed(const std::string& name);

std::string r2_name(R2Variant v);

/// l, m -> 1/l, 1/m followed by the affine Weyl shift l^k e -> l^{k+1} e,
/// l^k f -> l^{k-1} f on each leg. Literal: no sign normalization.
RMatrixDef invert_weyl(const RMatrixDef& r);

/// Sign factor s with invert_weyl(from) = s * to, or 0 if neither sign matches.
int weyl_sign(const RMatrixDef& from, const RMatrixDef& to);

/// l, m -> l + E, m + E.
RMatrixDef tau_shift(const RMatrixDef& r, const RatFn& E = RatFn::var(Var::E));

struct PencilCoeffs {
  MPoly a1, a2, a3;

  static PencilCoeffs symbolic() { return {MPoly::var(Var::A1), MPoly::var(Var::A2), MPoly::var(Var::A3)}; }
  static PencilCoeffs of(const Scalar& a1, const Scalar& a2, const Scalar& a3) { return {MPoly(a1), MPoly(a2), MPoly(a3)}; }
  bool is_numeric() const { return a1.is_constant() && a2.is_constant() && a3.is_constant(); }
  bool is_zero() const { return a1.is_zero() && a2.is_zero() && a3.is_zero(); }
  /// a2^2 - a1 a3.
  MPoly discriminant() const { return a2 * a2 - a1 * a3; }
  friend bool operator==(const PencilCoeffs& x, const PencilCoeffs& y) {
    return x.a1 == y.a1 && x.a2 == y.a2 && x.a3 == y.a3;
  }
  std::string to_string() const;
};

/// a1 r1 + a2 r2 + a3 r3 with the chosen r2 variant.
RMatrixDef pencil(const PencilCoeffs& a, R2Variant variant);

/// Coefficients of tau_shift(pencil(a)) in the pencil basis:
/// (a1 + 2E a2 + E^2 a3, a2 + E a3, a3).
PencilCoeffs pencil_shift_action(const PencilCoeffs& a, const MPoly& E = MPoly::var(Var::E));

/// r - t/(l - m): the polynomial tail of a rational r-matrix, nullopt if not polynomial.
std::optional<Tensor2<MPoly>> polynomial_tail(const RMatrixDef& r);

Tensor2<RatFn> casimir_over(const RatFn& c);

/// Coefficients of E^k in a tensor polynomial in E; index k of the result.
std::vector<Tensor2<RatFn>> split_by_e_power(const Tensor2<RatFn>& t);

/// Compatible triple containing a Stolin matrix: r1_stolin_const, the E-linear
/// part of tau_shift(r3_stolin_lin), and r3_stolin_lin (or the const/lin swap).
std::vector<RMatrixDef> stolin_triple(bool linear_r3 = true);

}  // namespace cybelab

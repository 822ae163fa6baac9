#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cybelab/catalog.hpp"

namespace cybelab {

/// First nonzero entry of a three-leg tensor: basis triple, its coefficient, and
/// the leading numerator monomial of that coefficient.
struct Witness3 {
  std::array<Basis, 3> basis;
  std::string coefficient;
  std::string monomial;
  std::string to_string() const;
};

/// A three-leg tensor over RatFn(l, m, n).
struct Bracket3Result {
  Tensor3<RatFn> tensor;
  bool zero = true;
  std::optional<Witness3> witness;  // set iff !zero
};

Bracket3Result make_result(Tensor3<RatFn> t);

/// r(l, m) placed on legs (1,2), (1,3), (2,3) with arguments (l,m), (l,n), (m,n).
Tensor2<RatFn> on_legs_12(const Tensor2<RatFn>& r);
Tensor2<RatFn> on_legs_13(const Tensor2<RatFn>& r);
Tensor2<RatFn> on_legs_23(const Tensor2<RatFn>& r);

/// [r12, r13] + [r12, r23] + [r13, r23].
Bracket3Result cybe_bracket(const RMatrixDef& r);

/// Symmetric bilinear bracket with mixed_schouten(r, r) = 2 cybe_bracket(r).
Bracket3Result mixed_schouten(const RMatrixDef& a, const RMatrixDef& b);

/// cybe_bracket of the pencil with symbolic a1, a2, a3.
Bracket3Result pencil_cybe_symbolic(R2Variant variant);

/// The r2 variant whose CYBE vanishes, nullopt unless exactly one does.
std::optional<R2Variant> resolve_r2_variant();

/// Entry (i, j) is true iff mixed_schouten(rs[i], rs[j]) = 0.
std::vector<std::vector<bool>> compat_matrix(const std::vector<RMatrixDef>& rs);

/// Second route: evaluate r at the three argument pairs first, bracket over Q.
Tensor3<Scalar> cybe_at_point(const RMatrixDef& r, const Scalar& l, const Scalar& m, const Scalar& n);

/// Evaluate a rational three-leg tensor at (l, m, n).
Tensor3<Scalar> evaluate_at(const Tensor3<RatFn>& t, const Scalar& l, const Scalar& m, const Scalar& n);

/// Polynomial tail r - t/(l - m) has degree at most one in each of l and m.
bool tail_degree_at_most_one(const RMatrixDef& r);

}  // namespace cybelab

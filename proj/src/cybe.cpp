#include "cybelab/cybe.hpp"

#include <sstream>

namespace cybelab {

std::string Witness3::to_string() const {
  std::ostringstream os;
  os << basis_name(basis[0]) << "(x)" << basis_name(basis[1]) << "(x)" << basis_name(basis[2]) << ": " << coefficient
     << " [leading " << monomial << "]";
  return os.str();
}

Bracket3Result make_result(Tensor3<RatFn> t) {
  Bracket3Result out;
  out.zero = t.is_zero();
  if (!out.zero) {
    const auto& [k, c] = *t.terms().begin();
    const auto& [e, lead] = c.num().leading();
    out.witness = Witness3{k, c.to_string(), MPoly::monomial(e, lead).to_string()};
  }
  out.tensor = std::move(t);
  return out;
}

namespace {

Tensor2<RatFn> relabel(const Tensor2<RatFn>& r, const std::map<Var, Var>& mapping) {
  return r.map_coefficients([&](const RatFn& c) { return c.rename(mapping); });
}

struct Placed {
  Tensor2<RatFn> t12, t13, t23;
};

Placed place(const Tensor2<RatFn>& r) { return {on_legs_12(r), on_legs_13(r), on_legs_23(r)}; }

Tensor3<RatFn> bracket_terms(const Placed& a, const Placed& b) {
  return leg_bracket(a.t12, {1, 2}, b.t13, {1, 3}) + leg_bracket(a.t12, {1, 2}, b.t23, {2, 3}) +
         leg_bracket(a.t13, {1, 3}, b.t23, {2, 3});
}

Tensor2<Scalar> at(const Tensor2<RatFn>& r, const Scalar& x, const Scalar& y) {
  Tensor2<Scalar> out;
  for (const auto& [k, c] : r.terms()) out.add(k, c.evaluate({{Var::L, x}, {Var::M, y}}).constant_value());
  return out;
}

}  // namespace

Tensor2<RatFn> on_legs_12(const Tensor2<RatFn>& r) { return r; }
Tensor2<RatFn> on_legs_13(const Tensor2<RatFn>& r) { return relabel(r, {{Var::M, Var::N}}); }
Tensor2<RatFn> on_legs_23(const Tensor2<RatFn>& r) { return relabel(r, {{Var::L, Var::M}, {Var::M, Var::N}}); }

Bracket3Result cybe_bracket(const RMatrixDef& r) {
  const Placed p = place(r.tensor);
  return make_result(bracket_terms(p, p));
}

Bracket3Result mixed_schouten(const RMatrixDef& a, const RMatrixDef& b) {
  const Placed pa = place(a.tensor), pb = place(b.tensor);
  return make_result(bracket_terms(pa, pb) + bracket_terms(pb, pa));
}

Bracket3Result pencil_cybe_symbolic(R2Variant variant) {
  return cybe_bracket(pencil(PencilCoeffs::symbolic(), variant));
}

std::optional<R2Variant> resolve_r2_variant() {
  const bool plus = cybe_bracket(make("r2_plus")).zero;
  const bool minus = cybe_bracket(make("r2_minus")).zero;
  if (plus == minus) return std::nullopt;
  return plus ? R2Variant::Plus : R2Variant::Minus;
}

std::vector<std::vector<bool>> compat_matrix(const std::vector<RMatrixDef>& rs) {
  const std::size_t n = rs.size();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out[i][j] = out[j][i] = mixed_schouten(rs[i], rs[j]).zero;
  return out;
}

Tensor3<Scalar> cybe_at_point(const RMatrixDef& r, const Scalar& l, const Scalar& m, const Scalar& n) {
  const Tensor2<Scalar> r12 = at(r.tensor, l, m), r13 = at(r.tensor, l, n), r23 = at(r.tensor, m, n);
  return leg_bracket(r12, {1, 2}, r13, {1, 3}) + leg_bracket(r12, {1, 2}, r23, {2, 3}) +
         leg_bracket(r13, {1, 3}, r23, {2, 3});
}

Tensor3<Scalar> evaluate_at(const Tensor3<RatFn>& t, const Scalar& l, const Scalar& m, const Scalar& n) {
  Tensor3<Scalar> out;
  for (const auto& [k, c] : t.terms())
    out.add(k, c.evaluate({{Var::L, l}, {Var::M, m}, {Var::N, n}}).constant_value());
  return out;
}

bool tail_degree_at_most_one(const RMatrixDef& r) {
  auto tail = polynomial_tail(r);
  if (!tail) return false;
  for (const auto& [k, p] : tail->terms())
    for (Var v : p.variables())
      if ((v != Var::L && v != Var::M) || p.degree(v) > 1) return false;
  return true;
}

}  // namespace cybelab
